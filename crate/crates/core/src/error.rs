use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("invalid parameters for {name}: {reason}")]
    Params { name: String, reason: String },
    #[error("length mismatch: expected {expected} bits, got {got}")]
    Length { expected: usize, got: usize },
    #[error("{what}: arity {arity} exceeds the cap of {cap}")]
    Cap {
        what: &'static str,
        arity: usize,
        cap: usize,
    },
    #[error("invalid code: {0}")]
    Code(String),
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("linear program failed at degree {degree}: {reason}")]
    Lp { degree: usize, reason: String },
    #[error("invalid scheme: {0}")]
    Scheme(String),
    #[error("invalid dimensions: {0}")]
    Dimensions(String),
    #[error("invalid certificate collection: {0}")]
    Certificates(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn params(name: &str, reason: impl Into<String>) -> Self {
        Error::Params {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
