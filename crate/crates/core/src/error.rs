use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A truncated product or series needed more terms than the configuration allows.
    #[error("series did not converge: {needed} terms needed, limit is {limit}")]
    NonConvergence { needed: u64, limit: u64 },

    /// Boundary comparisons during argument reduction could not be decided.
    #[error("argument reduction failed: {0}")]
    Reduction(String),

    #[error("coefficient rounding failed: residual {residual:e} is not below {threshold:e}")]
    Rounding { residual: f64, threshold: f64 },

    #[error("polynomial is not an exact power of its squarefree part")]
    PowerCheck,

    #[error("possible pole: conjugate value of magnitude 2^{log2_magnitude:.1}")]
    PossiblePole { log2_magnitude: f64 },

    #[error("precision exhausted at {bits} bits: {last}")]
    PrecisionExhausted { bits: u32, last: Box<Error> },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 2,
            Error::NonConvergence { .. } | Error::Rounding { .. } | Error::Reduction(_) => 3,
            Error::PrecisionExhausted { last, .. } => match **last {
                Error::PowerCheck | Error::PossiblePole { .. } | Error::CrossCheck(_) => 4,
                _ => 3,
            },
            Error::PowerCheck | Error::PossiblePole { .. } | Error::CrossCheck(_) => 4,
            Error::Io(_) | Error::Json(_) => 4,
        }
    }

    /// Whether a retry at higher working precision may succeed.
    pub fn is_precision_related(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::Reduction(_)
                | Error::Rounding { .. }
                | Error::PowerCheck
                | Error::PossiblePole { .. }
        )
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
