//! The sectioned key-value job format.
//!
//! ```text
//! [ring]
//! vars = x, y
//! base = ZZ            # or QQ, GF(p)
//! relations = x*y - 2
//! [point]
//! prime = 2
//! generators = x, y
//! [task]
//! kind = base-change   # check | base-change | theorem-f | oracle-crosscheck
//! ramified = true
//! dim = 2              # optional
//! fiber_points = x, y  # repeatable, theorem-f only
//! report = out.json    # optional
//! ```
//!
//! Comments start at `#`. List values are comma separated; an empty value
//! is an empty list.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;
use regulus::poly::parse_poly_over;
use regulus::{
    parse_poly, Fp, MultiPoly, PresentedVariety, PrimeField, Rational, RationalField,
    TriangularPoint,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("{field}: {message}")]
    Semantic { field: String, message: String },

    #[error("{field} (line {line}): {source}")]
    Polynomial {
        field: String,
        line: usize,
        #[source]
        source: regulus::Error,
    },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl JobError {
    pub fn kind(&self) -> &'static str {
        match self {
            JobError::Syntax { .. } => "job-syntax",
            JobError::Semantic { .. } => "job-semantic",
            JobError::Polynomial { .. } => "parse-error",
            JobError::Io { .. } => "io-error",
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            JobError::Syntax { line, .. } | JobError::Polynomial { line, .. } => Some(*line),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<&str> {
        match self {
            JobError::Semantic { field, .. } | JobError::Polynomial { field, .. } => Some(field),
            _ => None,
        }
    }

    fn semantic(field: &str, message: impl Into<String>) -> Self {
        JobError::Semantic {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Integers,
    Rationals,
    Finite(u64),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Integers => f.write_str("ZZ"),
            Base::Rationals => f.write_str("QQ"),
            Base::Finite(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Check,
    BaseChange,
    TheoremF,
    OracleCrosscheck,
}

impl TaskKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Check => "check",
            TaskKind::BaseChange => "base-change",
            TaskKind::TheoremF => "theorem-f",
            TaskKind::OracleCrosscheck => "oracle-crosscheck",
        }
    }
}

/// Variety and point, parsed over the job's base.
#[derive(Clone, Debug)]
pub enum Input {
    Integers {
        variety: PresentedVariety<BigInt>,
        /// Absent only for `theorem-f` jobs that list their fiber points.
        point: Option<TriangularPoint<BigInt>>,
        prime: u64,
        fiber_points: Vec<TriangularPoint<Fp>>,
    },
    Rationals {
        variety: PresentedVariety<Rational>,
        point: TriangularPoint<Rational>,
    },
    Finite {
        variety: PresentedVariety<Fp>,
        point: TriangularPoint<Fp>,
    },
}

#[derive(Clone, Debug)]
pub struct Job {
    pub base: Base,
    pub kind: TaskKind,
    pub input: Input,
    pub ramified: Option<bool>,
    pub dim: Option<usize>,
    pub report: Option<PathBuf>,
}

impl Job {
    pub fn vars(&self) -> &[String] {
        match &self.input {
            Input::Integers { variety, .. } => variety.vars(),
            Input::Rationals { variety, .. } => variety.vars(),
            Input::Finite { variety, .. } => variety.vars(),
        }
    }
}

struct Entry {
    line: usize,
    value: String,
}

type Sections = BTreeMap<String, BTreeMap<String, Vec<Entry>>>;

const KEYS: &[(&str, &[&str])] = &[
    ("ring", &["vars", "base", "relations"]),
    ("point", &["prime", "generators"]),
    (
        "task",
        &["kind", "ramified", "dim", "fiber_points", "report"],
    ),
];

fn split_sections(text: &str) -> Result<Sections, JobError> {
    let mut sections = Sections::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| JobError::Syntax {
                line,
                message: format!("unterminated section header `{content}`"),
            })?;
            let name = name.trim();
            if !KEYS.iter().any(|(s, _)| *s == name) {
                return Err(JobError::Syntax {
                    line,
                    message: format!("unknown section `[{name}]`"),
                });
            }
            if sections.contains_key(name) {
                return Err(JobError::Syntax {
                    line,
                    message: format!("section `[{name}]` appears twice"),
                });
            }
            sections.insert(name.to_string(), BTreeMap::new());
            current = Some(name.to_string());
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(JobError::Syntax {
                line,
                message: format!("expected `key = value`, found `{content}`"),
            });
        };
        let key = key.trim();
        let Some(section) = &current else {
            return Err(JobError::Syntax {
                line,
                message: format!("`{key}` appears before any section header"),
            });
        };
        let allowed = KEYS
            .iter()
            .find(|(s, _)| s == section)
            .map(|(_, k)| *k)
            .unwrap_or(&[]);
        if !allowed.contains(&key) {
            return Err(JobError::Syntax {
                line,
                message: format!("unknown key `{key}` in `[{section}]`"),
            });
        }
        let entries = sections
            .get_mut(section)
            .unwrap()
            .entry(key.to_string())
            .or_default();
        if !entries.is_empty() && key != "fiber_points" {
            return Err(JobError::Syntax {
                line,
                message: format!("`{section}.{key}` is given twice"),
            });
        }
        entries.push(Entry {
            line,
            value: value.trim().to_string(),
        });
    }
    Ok(sections)
}

struct Fields<'a> {
    sections: &'a Sections,
}

impl<'a> Fields<'a> {
    fn all(&self, section: &str, key: &str) -> &'a [Entry] {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map_or(&[], Vec::as_slice)
    }

    fn get(&self, section: &str, key: &str) -> Option<&'a Entry> {
        self.all(section, key).first()
    }

    fn require(&self, section: &str, key: &str) -> Result<&'a Entry, JobError> {
        self.get(section, key)
            .ok_or_else(|| JobError::semantic(&format!("{section}.{key}"), "missing"))
    }
}

fn list(value: &str) -> Vec<&str> {
    if value.trim().is_empty() {
        Vec::new()
    } else {
        value.split(',').map(str::trim).collect()
    }
}

fn parse_base(entry: &Entry) -> Result<Base, JobError> {
    let v = entry.value.as_str();
    match v {
        "ZZ" => Ok(Base::Integers),
        "QQ" => Ok(Base::Rationals),
        _ => {
            let p = v
                .strip_prefix("GF(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.trim().parse::<u64>().ok())
                .ok_or_else(|| {
                    JobError::semantic(
                        "ring.base",
                        format!("expected ZZ, QQ or GF(p), found `{v}`"),
                    )
                })?;
            PrimeField::new(p).map_err(|e| JobError::semantic("ring.base", e.to_string()))?;
            Ok(Base::Finite(p))
        }
    }
}

fn parse_polys<R>(
    entry: &Entry,
    field: &str,
    mut parse: impl FnMut(&str) -> regulus::Result<MultiPoly<R>>,
) -> Result<Vec<MultiPoly<R>>, JobError> {
    list(&entry.value)
        .into_iter()
        .map(|s| {
            if s.is_empty() {
                return Err(JobError::Syntax {
                    line: entry.line,
                    message: format!("empty item in `{field}`"),
                });
            }
            parse(s).map_err(|source| JobError::Polynomial {
                field: field.to_string(),
                line: entry.line,
                source,
            })
        })
        .collect()
}

fn parse_bool(entry: &Entry, field: &str) -> Result<bool, JobError> {
    match entry.value.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        v => Err(JobError::semantic(
            field,
            format!("expected true or false, found `{v}`"),
        )),
    }
}

fn point_error(field: &str) -> impl Fn(regulus::Error) -> JobError + '_ {
    move |e| JobError::semantic(field, e.to_string())
}

/// Parses and validates a job file.
pub fn parse_job(text: &str) -> Result<Job, JobError> {
    let sections = split_sections(text)?;
    let f = Fields {
        sections: &sections,
    };

    let kind = match f.require("task", "kind")?.value.as_str() {
        "check" => TaskKind::Check,
        "base-change" => TaskKind::BaseChange,
        "theorem-f" => TaskKind::TheoremF,
        "oracle-crosscheck" => TaskKind::OracleCrosscheck,
        other => {
            return Err(JobError::semantic(
                "task.kind",
                format!("unknown task `{other}`; expected check, base-change, theorem-f or oracle-crosscheck"),
            ))
        }
    };
    let base = parse_base(f.require("ring", "base")?)?;

    let vars: Vec<String> = list(&f.require("ring", "vars")?.value)
        .into_iter()
        .map(str::to_string)
        .collect();
    if vars.is_empty() {
        return Err(JobError::semantic(
            "ring.vars",
            "at least one variable is required",
        ));
    }
    for (i, v) in vars.iter().enumerate() {
        let ok = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(JobError::semantic(
                "ring.vars",
                format!("`{v}` is not a valid variable name"),
            ));
        }
        if vars[..i].contains(v) {
            return Err(JobError::semantic(
                "ring.vars",
                format!("`{v}` is listed twice"),
            ));
        }
    }

    let prime = match (f.get("point", "prime"), base) {
        (Some(e), Base::Integers) => {
            let p = e.value.parse::<u64>().map_err(|_| {
                JobError::semantic(
                    "point.prime",
                    format!("`{}` is not a positive integer", e.value),
                )
            })?;
            PrimeField::new(p).map_err(|err| JobError::semantic("point.prime", err.to_string()))?;
            Some(p)
        }
        (None, Base::Integers) => {
            return Err(JobError::semantic(
                "point.prime",
                "required when the base is ZZ",
            ));
        }
        (Some(_), _) => {
            return Err(JobError::semantic(
                "point.prime",
                format!("only allowed when the base is ZZ, not {base}"),
            ));
        }
        (None, _) => None,
    };

    let arithmetic_task = matches!(kind, TaskKind::BaseChange | TaskKind::TheoremF);
    if arithmetic_task && base != Base::Integers {
        return Err(JobError::semantic(
            "ring.base",
            format!("task {} needs base ZZ", kind.as_str()),
        ));
    }
    let ramified = match (f.get("task", "ramified"), arithmetic_task) {
        (Some(e), true) => Some(parse_bool(e, "task.ramified")?),
        (None, true) => {
            return Err(JobError::semantic(
                "task.ramified",
                format!("required for task {}", kind.as_str()),
            ))
        }
        (Some(_), false) => {
            return Err(JobError::semantic(
                "task.ramified",
                format!("not allowed for task {}", kind.as_str()),
            ))
        }
        (None, false) => None,
    };
    let dim = f
        .get("task", "dim")
        .map(|e| {
            e.value.parse::<usize>().map_err(|_| {
                JobError::semantic(
                    "task.dim",
                    format!("`{}` is not a nonnegative integer", e.value),
                )
            })
        })
        .transpose()?;
    if kind != TaskKind::TheoremF && !f.all("task", "fiber_points").is_empty() {
        return Err(JobError::semantic(
            "task.fiber_points",
            "only allowed for task theorem-f",
        ));
    }
    let report = f.get("task", "report").map(|e| PathBuf::from(&e.value));

    let rel_entry = f.require("ring", "relations")?;
    let gen_entry = f.get("point", "generators");
    let fiber_entries = f.all("task", "fiber_points");
    let needs_point = !(kind == TaskKind::TheoremF && !fiber_entries.is_empty());
    if gen_entry.is_none() && needs_point {
        return Err(JobError::semantic("point.generators", "missing"));
    }

    let variety_error = |e: regulus::Error| JobError::semantic("ring.relations", e.to_string());
    let input = match base {
        Base::Integers => {
            let p = prime.expect("checked above");
            let relations = parse_polys(rel_entry, "ring.relations", |s| parse_poly(s, &vars))?;
            let variety = PresentedVariety::new(vars.clone(), relations).map_err(variety_error)?;
            let point = gen_entry
                .map(|e| {
                    let gens = parse_polys(e, "point.generators", |s| parse_poly(s, &vars))?;
                    TriangularPoint::with_prime(gens, p).map_err(point_error("point.generators"))
                })
                .transpose()?;
            let fp = PrimeField::new(p).expect("checked above");
            let mut fiber_points = Vec::with_capacity(fiber_entries.len());
            for e in fiber_entries {
                let gens = parse_polys(e, "task.fiber_points", |s| {
                    parse_poly_over::<Fp>(s, &vars, &fp)
                })?;
                fiber_points
                    .push(TriangularPoint::new(gens).map_err(point_error("task.fiber_points"))?);
            }
            Input::Integers {
                variety,
                point,
                prime: p,
                fiber_points,
            }
        }
        Base::Rationals => {
            let parse = |s: &str| parse_poly_over::<Rational>(s, &vars, &RationalField);
            let relations = parse_polys(rel_entry, "ring.relations", parse)?;
            let gens = parse_polys(gen_entry.expect("checked above"), "point.generators", parse)?;
            Input::Rationals {
                variety: PresentedVariety::new(vars.clone(), relations).map_err(variety_error)?,
                point: TriangularPoint::new(gens).map_err(point_error("point.generators"))?,
            }
        }
        Base::Finite(p) => {
            let fp = PrimeField::new(p).expect("checked above");
            let parse = |s: &str| parse_poly_over::<Fp>(s, &vars, &fp);
            let relations = parse_polys(rel_entry, "ring.relations", parse)?;
            let gens = parse_polys(gen_entry.expect("checked above"), "point.generators", parse)?;
            Input::Finite {
                variety: PresentedVariety::new(vars.clone(), relations).map_err(variety_error)?,
                point: TriangularPoint::new(gens).map_err(point_error("point.generators"))?,
            }
        }
    };

    Ok(Job {
        base,
        kind,
        input,
        ramified,
        dim,
        report,
    })
}
