use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("point counts disagree: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("relation is not reflexive and transitive")]
    NotPreorder,

    #[error("empty graph family")]
    EmptyFamily,

    #[error("value {value} at position {index} is not finite")]
    NonFinite { index: usize, value: f64 },

    #[error("partition is inconsistent with the preorder at ({0}, {1})")]
    InconsistentPartition(usize, usize),

    #[error("not a topology: {0}")]
    InvalidTopology(String),

    #[error("precondition violated: {reason} (witness point {witness})")]
    Precondition { reason: String, witness: usize },

    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("unknown catalog space `{0}`")]
    UnknownSpace(String),

    #[error("unknown function `{name}` for space `{space}`")]
    UnknownFunction { space: String, name: String },

    #[error("family `{family}` is not available for space `{space}`")]
    UnsupportedFamily { space: String, family: String },

    #[error("function `{name}` has value {value} outside [0,1]")]
    OutOfCube { name: String, value: f64 },

    #[error("families are not nested: {0}")]
    FamilyMismatch(String),

    #[error("compactifications are incompatible: {0}")]
    Incompatible(String),

    #[error("remainder has {size} vertices, exhaustive search allows at most {limit}")]
    RemainderTooLarge { size: usize, limit: usize },

    #[error("compactification is incomplete: end {end} thread {thread} does not converge")]
    Incomplete { end: usize, thread: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
