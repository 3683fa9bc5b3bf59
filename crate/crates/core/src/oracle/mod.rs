//! Brute-force verification of the criteria.
//!
//! A Buchberger Gröbner engine over field coefficients supplies ideal
//! dimensions and the length of `O/m²`; an independent diagonalization
//! over `ℤ/p²` handles the arithmetic case. Nothing here is used to compute
//! a verdict, only to check one or to supply a default dimension.

mod cotangent;
mod groebner;

pub use cotangent::{
    cotangent_dim_arithmetic, cotangent_dim_geometric, cotangent_dim_geometric_with_limits,
};
pub use groebner::{
    buchberger, buchberger_with_limits, ideal_dimension, normal_form, GroebnerBasis, GroebnerLimits,
};
