use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate recurrence at degree {n} for (alpha, beta) = ({alpha}, {beta})")]
    DegenerateRecurrence { n: usize, alpha: f64, beta: f64 },
    #[error("zero denominator in {0}")]
    DegenerateDenominator(&'static str),
    #[error("degree {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("tridiagonal eigen-solve did not converge (order {0})")]
    EigenFailure(usize),
    #[error("derivative of order {order} requested, only {declared} declared")]
    MissingDerivative { order: usize, declared: usize },
    #[error("index {index} out of range (available up to {max})")]
    IndexRange { index: usize, max: usize },
    #[error("coefficient tail not resolved (last/total energy = {0:e})")]
    TailNotResolved(f64),
    #[error("integral did not converge (error estimate {0:e})")]
    IntegralNotConverged(f64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown function id `{0}`")]
    UnknownId(String),
    #[error("need at least 3 usable points for a slope fit, got {0}")]
    TooFewPoints(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
