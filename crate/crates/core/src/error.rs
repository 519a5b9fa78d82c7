use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("source and destination are both {0}")]
    SameIndex(usize),

    #[error("qubit {qubit} out of range for {n}-qubit register")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("cx control and target are both qubit {0}")]
    ControlIsTarget(usize),

    #[error("a register needs at least one qubit")]
    EmptyRegister,

    #[error("size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("tableau is not symplectic")]
    NotSymplectic,

    #[error("tableau body is not the identity")]
    NotIdentity,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid coupling graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {0} is not in the alive set")]
    NotAlive(usize),

    #[error("vertex set is empty")]
    EmptyVertexSet,

    #[error("unknown architecture `{0}`")]
    UnknownArchitecture(String),

    #[error("qubit {0} has no physical placement")]
    Unmapped(usize),

    #[error("routing portion is undefined for zero routed cx gates")]
    ZeroRoutedCx,

    #[error("state-vector oracle supports at most {max} qubits, got {n}")]
    TooManyQubits { n: usize, max: usize },

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("verification failed for {arch} at {gates} gates, trial {trial} (seed {seed:#018x}): {reason}")]
    Verification {
        arch: String,
        gates: usize,
        trial: usize,
        seed: u64,
        reason: String,
    },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
