use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("empty variable selection")]
    EmptySelection,
    #[error("variable sets overlap on `{0}`")]
    Overlap(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("cardinality mismatch: expected {expected}, found {found}")]
    CardinalityMismatch { expected: usize, found: usize },
    #[error("value {value} out of range for `{var}` (cardinality {card})")]
    OutOfRange {
        var: String,
        value: usize,
        card: usize,
    },
    #[error("conditioning on zero-probability event `{var}` = {value}")]
    ZeroProbability { var: String, value: usize },
    #[error("expected {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("search bound exceeded: {0}")]
    SearchBound(String),
    #[error("invalid quantum state: {0}")]
    InvalidState(String),
    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("{context}: {message}")]
    Format { context: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
