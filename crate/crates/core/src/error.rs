use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field degree {0} out of range")]
    FieldDegree(u32),
    #[error("{0} is not a supported field order")]
    FieldOrder(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic index {0} out of range 1..=12")]
    CyclotomicIndex(u32),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("parse error in `{input}`: {msg}")]
    Parse { input: String, msg: String },
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("enumeration budget exceeded: group needs {required} elements, budget is {budget}")]
    Budget { required: u128, budget: u64 },
    #[error("matrix is not in the group: {0}")]
    NotInGroup(String),
    #[error("subgroup filter is empty")]
    EmptySubgroup,
    #[error("index {index} out of range ({what})")]
    OutOfRange { what: &'static str, index: usize },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("no suitable prime found")]
    NoPrime,
    #[error("eigenspace splitting failed: {0}")]
    Splitting(String),
    #[error("class data mismatch")]
    ClassMismatch,
    #[error("character `{0}` not identified")]
    Unidentified(String),
    #[error("character `{0}` is ambiguous: {1} candidates")]
    Ambiguous(String, usize),
    #[error("non-integral orbit decomposition: {0}")]
    NonIntegral(String),
    #[error("ℓ = 2 is excluded")]
    EvenEll,
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("data file: {0}")]
    Data(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
