use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero cannot be raised to the negative power {0}")]
    ZeroToNegativePower(i64),

    /// An expansion produced a total that disagrees with direct exponentiation.
    #[error("expansion mismatch for {strategy} at x={x}, n={n}: got {got}")]
    ExpansionMismatch {
        strategy: String,
        x: String,
        n: u32,
        got: String,
    },

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("identity `{id}` cannot be evaluated: {reason}")]
    NonEvaluable { id: String, reason: String },

    #[error("unknown grid variable `{var}` for identity `{id}`")]
    UnknownVariable { id: String, var: String },

    #[error("invalid sequence id `{0}` (expected 'A' followed by six digits)")]
    InvalidSequenceId(String),

    #[error("sequence {0} is not supported")]
    UnsupportedSequence(String),

    #[error("b-file line {line}: {message}")]
    BFileParse { line: usize, message: String },

    #[error("b-file indices are not consecutive at line {line}: expected {expected}, found {found}")]
    BFileGap {
        line: usize,
        expected: i64,
        found: i64,
    },

    #[error("{0} is not available offline (no bundled fixture or cache entry)")]
    CacheMiss(String),

    #[error("fetching {url} failed: {message}")]
    Network { url: String, message: String },

    #[error("requested {requested} terms of {id} but only {available} are available")]
    NotEnoughTerms {
        id: String,
        requested: usize,
        available: usize,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
