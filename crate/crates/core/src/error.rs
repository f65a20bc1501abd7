use thiserror::Error;

/// Errors raised anywhere in the enumeration pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a unit: series has zero constant term")]
    NotAUnit,

    #[error("bad constant term: {0}")]
    BadConstantTerm(&'static str),

    #[error("composition undefined: {0}")]
    Composition(&'static str),

    #[error("inexact division by monomial x^{kx} y^{ky}")]
    InexactDivision { kx: usize, ky: usize },

    #[error("singular implicit system")]
    SingularImplicitSystem,

    #[error("implicit solve did not converge: {0}")]
    NoConvergence(String),

    #[error("pipeline inconsistency: {0}")]
    PipelineInconsistency(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("root bracketing failed: {0}")]
    RootBracketing(String),

    #[error("parametrization singular")]
    ParametrizationSingular,

    #[error("at branch point")]
    AtBranchPoint,

    #[error("constants inconsistent: {0}")]
    ConstantsInconsistent(String),

    #[error("regularity check failed at t = {t}: 2*B4 = {lhs}, xi = {rhs}")]
    Regularity { t: String, lhs: String, rhs: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code: 2 for bad input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Unsupported(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
