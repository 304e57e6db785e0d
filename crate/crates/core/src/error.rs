use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("conductor {got} is not usable here: {reason}")]
    Conductor { got: u64, reason: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    Singular,

    #[error("element order exceeds cap {cap}")]
    NotFiniteOrder { cap: u32 },

    #[error("group closure exceeds cap {cap}")]
    GroupTooLarge { cap: usize },

    #[error("orbit exceeds cap {cap}")]
    OrbitTooLarge { cap: usize },

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("point set is not invariant under the element")]
    NotInvariant,

    #[error("method not applicable: {0}")]
    MethodInapplicable(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown catalog id `{0}`")]
    UnknownGroup(String),
}

pub type Result<T> = std::result::Result<T, Error>;
