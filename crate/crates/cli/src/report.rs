//! Report documents. Field order here is the order in the emitted JSON.

use regulus::{
    BaseChangeVerdict, Field, FieldMatrix, MultiPoly, RegularityReport, Ring, TheoremFReport,
    TowerElem,
};
use serde::Serialize;

use crate::job::{Input, Job, JobError};

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub vars: Vec<String>,
    pub base: String,
    pub relations: Vec<String>,
    pub point: Option<Vec<String>>,
    pub prime: Option<u64>,
    pub ramified: Option<bool>,
    pub dim: Option<usize>,
    pub fiber_points: Option<Vec<Vec<String>>>,
}

impl InputEcho {
    pub fn of(job: &Job) -> Self {
        let vars = job.vars().to_vec();
        let (relations, point, prime, fiber_points) = match &job.input {
            Input::Integers {
                variety,
                point,
                prime,
                fiber_points,
            } => (
                show(variety.relations(), &vars),
                point.as_ref().map(|pt| show(pt.generators(), &vars)),
                Some(*prime),
                Some(
                    fiber_points
                        .iter()
                        .map(|pt| show(pt.generators(), &vars))
                        .collect::<Vec<_>>(),
                )
                .filter(|f| !f.is_empty()),
            ),
            Input::Rationals { variety, point } => (
                show(variety.relations(), &vars),
                Some(show(point.generators(), &vars)),
                None,
                None,
            ),
            Input::Finite { variety, point } => (
                show(variety.relations(), &vars),
                Some(show(point.generators(), &vars)),
                None,
                None,
            ),
        };
        InputEcho {
            vars,
            base: job.base.to_string(),
            relations,
            point,
            prime,
            ramified: job.ramified,
            dim: job.dim,
            fiber_points,
        }
    }
}

pub(crate) fn show<R: Ring>(ps: &[MultiPoly<R>], vars: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.display(vars).to_string()).collect()
}

fn elems<F: Field>(v: &[TowerElem<F>]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn matrix<F: Field>(m: &FieldMatrix<F>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| elems(r)).collect()
}

/// The regularity verdict at one point.
#[derive(Debug, Serialize)]
pub struct CheckSummary {
    pub residue_field: String,
    pub jacobian: Vec<Vec<String>>,
    pub extra_column: Option<Vec<String>>,
    pub rank: usize,
    pub cotangent_dimension: usize,
    pub dimension: usize,
    pub dimension_provenance: &'static str,
    pub regular: bool,
}

impl CheckSummary {
    pub fn of<F: Field>(r: &RegularityReport<F>) -> Self {
        CheckSummary {
            residue_field: r.residue_field.describe(),
            jacobian: matrix(&r.jacobian),
            extra_column: r.extra_column.as_deref().map(elems),
            rank: r.rank,
            cotangent_dimension: r.cotangent_dimension,
            dimension: r.local_dimension,
            dimension_provenance: r.dimension_provenance.as_str(),
            regular: r.regular,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BaseChangeSummary {
    pub ramified: bool,
    pub regular_at_point: bool,
    pub solvable: Option<bool>,
    pub witness: Option<Vec<String>>,
    pub fiber_regular: bool,
}

impl BaseChangeSummary {
    pub fn of<F: Field>(v: &BaseChangeVerdict<F>) -> Self {
        BaseChangeSummary {
            ramified: v.ramified,
            regular_at_point: v.point_regular_upstairs,
            solvable: v.system_solvable,
            witness: v.witness.as_deref().map(elems),
            fiber_regular: v.fiber_regular,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FiberPointSummary {
    pub point: Vec<String>,
    pub upstairs: CheckSummary,
    pub base_change: BaseChangeSummary,
    pub special_fiber: Option<CheckSummary>,
    pub regular_after_base_change: bool,
}

#[derive(Debug, Serialize)]
pub struct TheoremFSummary {
    pub prime: u64,
    pub ramified: bool,
    pub regular_over_locus: bool,
    pub points: Vec<FiberPointSummary>,
}

impl TheoremFSummary {
    pub fn of(r: &TheoremFReport, vars: &[String]) -> Self {
        TheoremFSummary {
            prime: r.prime,
            ramified: r.ramified,
            regular_over_locus: r.regular_over_locus,
            points: r
                .points
                .iter()
                .map(|v| FiberPointSummary {
                    point: show(v.point.generators(), vars),
                    upstairs: CheckSummary::of(&v.upstairs),
                    base_change: BaseChangeSummary::of(&v.base_change),
                    special_fiber: v.special_fiber.as_ref().map(CheckSummary::of),
                    regular_after_base_change: v.regular_after_base_change,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleSummary {
    pub method: &'static str,
    pub cotangent_dimension: usize,
    pub agrees: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub status: &'static str,
    pub task: &'static str,
    pub input: InputEcho,
    #[serde(flatten)]
    pub check: Option<CheckSummary>,
    pub base_change: Option<BaseChangeSummary>,
    pub theorem_f: Option<TheoremFSummary>,
    pub oracle: Option<OracleSummary>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ErrorDetail {
    pub kind: &'static str,
    pub message: String,
    pub line: Option<usize>,
    pub field: Option<String>,
    /// Extra structured data, e.g. the witness factor of a non-maximal ideal.
    pub witness: Option<String>,
}

impl ErrorDetail {
    pub fn from_job(e: &JobError) -> Self {
        ErrorDetail {
            kind: e.kind(),
            message: e.to_string(),
            line: e.line(),
            field: e.field().map(str::to_string),
            witness: None,
        }
    }

    pub fn from_core(e: &regulus::Error) -> Self {
        let witness = match e {
            regulus::Error::NotMaximal { factor, .. } => Some(factor.clone()),
            regulus::Error::PointNotOnVariety { remainder, .. } => Some(remainder.clone()),
            _ => None,
        };
        let field = match e {
            regulus::Error::NotMaximal { .. } => Some("point.generators".to_string()),
            regulus::Error::PointNotOnVariety { relation, .. } => {
                Some(format!("ring.relations[{relation}]"))
            }
            _ => None,
        };
        ErrorDetail {
            kind: e.kind(),
            message: e.to_string(),
            line: None,
            field,
            witness,
        }
    }

    pub fn usage(message: String) -> Self {
        ErrorDetail {
            kind: "usage",
            message,
            line: None,
            field: None,
            witness: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub status: &'static str,
    pub task: Option<&'static str>,
    pub input: Option<InputEcho>,
    pub error: ErrorDetail,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Document {
    Ok(Box<Report>),
    Err(Box<ErrorReport>),
}

impl Document {
    pub fn render(&self, pretty: bool) -> String {
        let text = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        };
        text.expect("reports contain only strings, numbers and booleans")
    }
}
