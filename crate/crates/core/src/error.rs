use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("malformed monomial `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("malformed ideal file: {0}")]
    Format(String),

    #[error("level {k} out of range 1..={r}")]
    LevelOutOfRange { k: usize, r: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("the zero ideal has no lcm-filtration")]
    ZeroIdeal,

    #[error("generator `{0}` is not squarefree")]
    NotSquarefree(String),

    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(String),

    #[error("signature undefined: failure probability is zero at this parameter")]
    UndefinedSignature,

    #[error("{what}: {count} exceeds the limit {limit}")]
    ResourceGuard {
        what: String,
        count: u128,
        limit: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceGuard { .. } => 4,
            Error::NotSquarefree(_)
            | Error::UndefinedSignature
            | Error::ZeroIdeal
            | Error::ProbabilityRange(_) => 3,
            _ => 2,
        }
    }
}
