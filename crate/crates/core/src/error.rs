use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The target value is not reachable from the supplied bracket.
    #[error("no bracket for target {target} on [{lo}, {hi}]")]
    NoBracket { target: f64, lo: f64, hi: f64 },

    #[error("root search exceeded {iterations} iterations (last estimate {estimate})")]
    MaxIterExceeded { iterations: usize, estimate: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error {error}")]
    NonConvergent { estimate: f64, error: f64 },

    #[error("argument outside domain: {0}")]
    DomainError(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("unsupported generator: {0}")]
    UnsupportedGenerator(String),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of the numerical kernel (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoBracket { .. } | Error::MaxIterExceeded { .. } | Error::NonConvergent { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
