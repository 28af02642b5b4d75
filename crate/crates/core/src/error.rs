use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid privacy budget: {0}")]
    InvalidBudget(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid set system: {0}")]
    InvalidSystem(String),

    #[error("no messages to aggregate")]
    EmptyMessages,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("out of regime: {message}")]
    OutOfRegime {
        message: String,
        /// The admissible limit for the offending parameter, when one exists.
        limit: Option<f64>,
    },

    #[error("wire format: {0}")]
    Wire(String),

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
