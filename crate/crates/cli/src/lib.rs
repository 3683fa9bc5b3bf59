//! Job files in, JSON verdicts out.
//!
//! Exit codes: 0 when a verdict was computed (regular or not), 1 for usage
//! and parse errors, 2 when the mathematics rejects the input, 3 when the
//! brute-force oracle runs out of budget.

pub mod job;
pub mod report;

use std::path::{Path, PathBuf};

use regulus::oracle::{cotangent_dim_arithmetic, cotangent_dim_geometric};
use regulus::{
    base_change_from_report, check_arithmetic, check_geometric, reduce_point, theorem_f_check,
    Error, Field, PresentedVariety, RegularityReport, TriangularPoint,
};

pub use job::{parse_job, Base, Input, Job, JobError, TaskKind};
use report::{
    BaseChangeSummary, CheckSummary, Document, ErrorDetail, ErrorReport, InputEcho, OracleSummary,
    Report, TheoremFSummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// Exit code for an error kind.
pub fn exit_code(kind: &str) -> i32 {
    match kind {
        "usage" | "io-error" | "job-syntax" | "job-semantic" | "parse-error" | "not-prime" => {
            EXIT_USAGE
        }
        "oracle-resource-exhausted" => EXIT_EXHAUSTED,
        _ => EXIT_REJECTED,
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub document: Document,
    pub exit_code: i32,
}

impl Outcome {
    fn failure(task: Option<&'static str>, input: Option<InputEcho>, error: ErrorDetail) -> Self {
        Outcome {
            exit_code: exit_code(error.kind),
            document: Document::Err(Box::new(ErrorReport {
                status: "error",
                task,
                input,
                error,
            })),
        }
    }

    pub fn usage(message: String) -> Self {
        Outcome::failure(None, None, ErrorDetail::usage(message))
    }

    pub fn from_job_error(e: &JobError) -> Self {
        Outcome::failure(None, None, ErrorDetail::from_job(e))
    }
}

struct Computed {
    check: Option<CheckSummary>,
    base_change: Option<BaseChangeSummary>,
    theorem_f: Option<TheoremFSummary>,
    oracle: Option<OracleSummary>,
    warnings: Vec<String>,
}

impl Computed {
    fn check<F: Field>(r: &RegularityReport<F>) -> Self {
        Computed {
            check: Some(CheckSummary::of(r)),
            base_change: None,
            theorem_f: None,
            oracle: None,
            warnings: r.warnings.clone(),
        }
    }
}

fn crosscheck<F: Field>(
    r: &RegularityReport<F>,
    oracle: usize,
    method: &'static str,
) -> Result<Computed, Error> {
    if oracle != r.cotangent_dimension {
        return Err(Error::InternalConsistency(format!(
            "the Jacobian gives cotangent dimension {} but the oracle finds {oracle}",
            r.cotangent_dimension
        )));
    }
    let mut out = Computed::check(r);
    out.oracle = Some(OracleSummary {
        method,
        cotangent_dimension: oracle,
        agrees: true,
    });
    Ok(out)
}

fn geometric<F: Field>(
    kind: TaskKind,
    variety: &PresentedVariety<F>,
    point: &TriangularPoint<F>,
    dim: Option<usize>,
) -> Result<Computed, Error> {
    let r = check_geometric(variety, point, dim)?;
    match kind {
        TaskKind::OracleCrosscheck => {
            let d = cotangent_dim_geometric(variety.relations(), point)?;
            crosscheck(&r, d, "groebner-quotient")
        }
        _ => Ok(Computed::check(&r)),
    }
}

fn compute(job: &Job) -> Result<Computed, Error> {
    match &job.input {
        Input::Rationals { variety, point } => geometric(job.kind, variety, point, job.dim),
        Input::Finite { variety, point } => geometric(job.kind, variety, point, job.dim),
        Input::Integers {
            variety,
            point,
            prime,
            fiber_points,
        } => {
            if job.kind == TaskKind::TheoremF {
                let fibers = if fiber_points.is_empty() {
                    vec![reduce_point(point.as_ref().expect("validated job"))?]
                } else {
                    fiber_points.clone()
                };
                let ramified = job.ramified.expect("validated job");
                let r = theorem_f_check(variety, *prime, &fibers, ramified, job.dim)?;
                let mut warnings: Vec<String> = Vec::new();
                for v in &r.points {
                    for w in v
                        .upstairs
                        .warnings
                        .iter()
                        .chain(v.special_fiber.iter().flat_map(|s| &s.warnings))
                    {
                        if !warnings.contains(w) {
                            warnings.push(w.clone());
                        }
                    }
                }
                return Ok(Computed {
                    check: None,
                    base_change: None,
                    theorem_f: Some(TheoremFSummary::of(&r, variety.vars())),
                    oracle: None,
                    warnings,
                });
            }
            let point = point.as_ref().expect("validated job");
            let r = check_arithmetic(variety, point, job.dim)?;
            match job.kind {
                TaskKind::BaseChange => {
                    let v = base_change_from_report(&r, job.ramified.expect("validated job"))?;
                    let mut out = Computed::check(&r);
                    out.base_change = Some(BaseChangeSummary::of(&v));
                    Ok(out)
                }
                TaskKind::OracleCrosscheck => {
                    let d = cotangent_dim_arithmetic(variety.relations(), point)?;
                    crosscheck(&r, d, "smith-form-mod-p-squared")
                }
                _ => Ok(Computed::check(&r)),
            }
        }
    }
}

/// Runs a validated job.
pub fn run_job(job: &Job) -> Outcome {
    let task = job.kind.as_str();
    let input = InputEcho::of(job);
    match compute(job) {
        Ok(c) => Outcome {
            exit_code: EXIT_OK,
            document: Document::Ok(Box::new(Report {
                status: "ok",
                task,
                input,
                check: c.check,
                base_change: c.base_change,
                theorem_f: c.theorem_f,
                oracle: c.oracle,
                warnings: c.warnings,
            })),
        },
        Err(e) => Outcome::failure(Some(task), Some(input), ErrorDetail::from_core(&e)),
    }
}

/// Parses and runs job text; also returns the report path named in the job.
pub fn run_text(text: &str) -> (Outcome, Option<PathBuf>) {
    match parse_job(text) {
        Ok(job) => (run_job(&job), job.report.clone()),
        Err(e) => (Outcome::from_job_error(&e), None),
    }
}

/// Reads, parses and runs a job file. A relative `report` path in the job
/// is taken relative to the job file.
pub fn run_file(path: &Path) -> (Outcome, Option<PathBuf>) {
    match std::fs::read_to_string(path) {
        Ok(text) => {
            let (outcome, report) = run_text(&text);
            let report = report.map(|r| match path.parent() {
                Some(dir) if r.is_relative() => dir.join(r),
                _ => r,
            });
            (outcome, report)
        }
        Err(e) => (
            Outcome::from_job_error(&JobError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            }),
            None,
        ),
    }
}
