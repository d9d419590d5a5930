use thiserror::Error;

/// Errors raised by the exact-geometry and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}:{line}: {message}")]
    File {
        path: String,
        line: usize,
        message: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is singular")]
    Singular,

    #[error("partitions are defined over different event sets")]
    BaseMismatch,

    #[error("event `{id}` leaves the event set under the transformation")]
    EscapingEvent { id: String },

    #[error("duplicate event: {0}")]
    DuplicateEvent(String),

    #[error("unknown event id `{0}`")]
    UnknownEvent(String),

    #[error("malformed relation spec: {0}")]
    MalformedSpec(String),

    #[error("coset search bound exhausted on pair ({p}, {q})")]
    BoundExhausted { p: String, q: String },

    #[error("relation trace is not an equivalence: {0}")]
    NotAnEquivalence(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
