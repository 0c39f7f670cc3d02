use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violates a mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Newton or Krylov iteration stopped before meeting its tolerance.
    #[error("{stage} did not converge after {iterations} iterations (residual {residual:.3e})")]
    Convergence {
        stage: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// A fitted or differenced quantity is too poorly conditioned to trust.
    #[error("ill-conditioned: {0}")]
    Conditioning(String),

    #[error("malformed data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
