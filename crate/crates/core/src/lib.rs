//! Exact Jacobian criteria for regularity of closed points.
//!
//! Given an affine variety `Spec K[t_1,…,t_n]/(f_1,…,f_r)` over `ℚ` or `𝔽_p`,
//! or an arithmetic variety over `ℤ` localized at a prime `p`, and a closed
//! point presented by a triangular generator system, this crate decides
//! whether the local ring at the point is regular. It also predicts whether
//! regularity survives base change to an unramified or ramified extension of
//! the base discrete valuation ring.
//!
//! All arithmetic is exact. An independent Gröbner-basis oracle computes the
//! cotangent-space dimension directly, for cross-checking.

pub mod criteria;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod sample;
pub mod tower;

pub use criteria::{
    arithmetic_jacobian, base_change_from_report, base_change_verdict, check_arithmetic,
    check_geometric, generalized_jacobian, lift_point, reduce_point, theorem_f_check,
    validate_arithmetic_point, validate_point, BaseChangeVerdict, DimensionProvenance,
    FiberPointVerdict, PresentedVariety, RegularityReport, TheoremFReport,
};
pub use error::{Error, Result};
pub use field::{Field, Fp, PrimeField, Rational, RationalField, Ring};
pub use linalg::FieldMatrix;
pub use poly::{parse_poly, parse_poly_over, MultiPoly, TriangularPoint};
pub use tower::{ResidueTower, TowerElem};
