use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} needs {needed} items, above the configured guard of {bound}")]
    GuardExceeded {
        what: String,
        needed: u128,
        bound: u64,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown curve kind `{0}`")]
    UnknownKind(String),

    #[error("singular model: {0}")]
    Singular(String),

    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),

    #[error("class group oracle unstable: {0}")]
    Unstable(String),

    #[error("inseparable map: {0}")]
    Inseparable(String),

    #[error("element {0} lies outside the base field")]
    NotInBaseField(u32),

    #[error("branch locus escapes the target set: {0}")]
    BranchEscape(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
