use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tables: {0}")]
    InvalidTables(String),
    #[error("invalid scalar action: {0}")]
    InvalidAction(String),
    #[error("incompatible ring: {0}")]
    IncompatibleRing(String),
    #[error("size limit exceeded: {what} needs {needed}, cap is {cap}")]
    SizeLimitExceeded {
        what: String,
        needed: u64,
        cap: u64,
    },
    #[error("search space exceeded: {what} needs {needed} candidates, cap is {cap}")]
    SearchSpaceExceeded {
        what: String,
        needed: u64,
        cap: u64,
    },
    #[error("condition (*) fails: witness {witness}")]
    StarConditionViolated { witness: String },
    #[error("not a frame: {0}")]
    NotAFrame(String),
    #[error("element set is not a submodule: witness {witness}")]
    NotASubmodule { witness: String },
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("schema error at {path}: {reason}")]
    SchemaError { path: String, reason: String },
    #[error("unknown catalog entry: {0}")]
    UnknownCatalogEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code contract: 2 input errors, 3 resource-cap errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeLimitExceeded { .. } | Error::SearchSpaceExceeded { .. } => 3,
            _ => 2,
        }
    }
}
