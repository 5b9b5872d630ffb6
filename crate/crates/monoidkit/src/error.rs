use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("bad word: {0}")]
    BadWord(String),
    #[error("unsupported backend: {0}")]
    UnsupportedBackend(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("multiplicative set contains zero")]
    ZeroInS,
    #[error("the zero ideal is not prime")]
    ZeroNotPrime,
    #[error("ideal is not proper")]
    ImproperIdeal,
    #[error("not a subset: {0}")]
    NotASubset(String),
    #[error("not an admissible exact sequence: {0}")]
    NotAES(String),
    #[error("not projective: {0}")]
    NotProjective(String),
    #[error("ideal is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("complex is not reduced: {0}")]
    NotReduced(String),
    #[error("truncation too low: need at least {need}, got {got}")]
    TruncationTooLow { need: usize, got: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("not normal: {0}")]
    NotNormal(String),
    #[error("invalid: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("missing expectation: {0}")]
    MissingExpectation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded(_) | Error::CapExceeded(_) => 3,
            _ => 2,
        }
    }
}
