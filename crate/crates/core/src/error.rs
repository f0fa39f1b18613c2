use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("not an X-state: entry ({row}, {col}) has magnitude {magnitude:e}")]
    NotXState {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error(
        "reservoir regime error: lambda = {lambda}, gamma0 = {gamma0} \
         (non-Markovian branch needs lambda < 2 gamma0)"
    )]
    Regime { gamma0: f64, lambda: f64 },

    #[error("degenerate measurement outcome: success probability {prob:e}")]
    DegenerateOutcome { prob: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("outside the approximation domain: radicand {radicand:e}")]
    ApproximationDomain { radicand: f64 },
}

impl Error {
    /// True for errors caused by caller-supplied parameters rather than
    /// by the numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_) | Error::Regime { .. } | Error::NotXState { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
