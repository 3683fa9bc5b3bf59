use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant maps to a stable machine-readable [`Error::kind`] string,
/// which the command-line driver reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{0} is not a supported prime")]
    NotPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error(
        "ideal is not maximal: {factor} is a proper factor of the generator for `{variable}` (level {level})"
    )]
    NotMaximal {
        level: usize,
        variable: String,
        factor: String,
    },

    #[error("point is not on the variety: relation {relation} has remainder {remainder}")]
    PointNotOnVariety { relation: usize, remainder: String },

    #[error("generators are not independent in m/m^2 (generator Jacobian has rank {rank} < {expected}); choose different generators")]
    GeneratorsNotIndependent { rank: usize, expected: usize },

    #[error("dimension mismatch: cotangent dimension {cotangent} is below the {provenance} dimension {dimension}")]
    DimensionMismatch {
        cotangent: usize,
        dimension: usize,
        provenance: String,
    },

    #[error("the ideal is the unit ideal (empty variety)")]
    EmptyVariety,

    #[error("point is not regular on the base variety; run the arithmetic check first")]
    NotRegularUpstairs,

    #[error("oracle resource limit exceeded: {0}")]
    ResourceExhausted(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse-error",
            Error::NotPrime(_) => "not-prime",
            Error::InvalidInput(_) => "invalid-input",
            Error::InvalidPoint(_) => "invalid-point",
            Error::DivisionByZero => "division-by-zero",
            Error::NotMaximal { .. } => "ideal-not-maximal",
            Error::PointNotOnVariety { .. } => "point-not-on-variety",
            Error::GeneratorsNotIndependent { .. } => "generators-not-independent",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::EmptyVariety => "empty-variety",
            Error::NotRegularUpstairs => "not-regular-upstairs",
            Error::ResourceExhausted(_) => "oracle-resource-exhausted",
            Error::InternalConsistency(_) => "internal-consistency",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
