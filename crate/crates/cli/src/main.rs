use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use regulus_cli::{run_file, Outcome, EXIT_OK, EXIT_USAGE};

/// Decide regularity of a closed point from a job file.
#[derive(Parser, Debug)]
#[command(name = "regulus", version)]
struct Args {
    /// Job file in the sectioned key-value format.
    job: PathBuf,

    /// Write the report here instead of stdout (overrides `report` in the job).
    #[arg(long)]
    report: Option<PathBuf>,

    /// Indent the JSON report.
    #[arg(long)]
    pretty: bool,
}

fn emit(outcome: &Outcome, path: Option<PathBuf>, pretty: bool) -> i32 {
    let text = outcome.document.render(pretty);
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, format!("{text}\n")) {
                eprintln!("regulus: cannot write {}: {e}", p.display());
                println!("{text}");
                return EXIT_USAGE;
            }
        }
        None => println!("{text}"),
    }
    if let regulus_cli::report::Document::Err(e) = &outcome.document {
        eprintln!("regulus: {}: {}", e.error.kind, e.error.message);
    }
    outcome.exit_code
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    let (outcome, job_report) = run_file(&args.job);
    let code = emit(&outcome, args.report.or(job_report), args.pretty);
    ExitCode::from(code as u8)
}
