use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {v} out of range for graph with {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generator gave up after {attempts} attempts")]
    RetryCapExceeded { attempts: usize },
    #[error("graph too large for brute force: n = {n} (max {max})")]
    TooLarge { n: usize, max: usize },
    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("instance spec {spec:?}: {msg}")]
    BadSpec { spec: String, msg: String },
    #[error("curve never crosses 50%")]
    NoCrossing,
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
