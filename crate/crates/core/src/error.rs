use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group order {order}: {reason}")]
    InvalidOrder { order: usize, reason: &'static str },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("malformed Cayley table (line {line}): {message}")]
    Parse { line: usize, message: String },

    #[error("table is not a Latin square: {0}")]
    NotLatinSquare(String),

    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("identity must be element 0: {0}")]
    IdentityPlacement(String),

    #[error("group of order {0} exceeds the supported table size")]
    TooLarge(usize),

    #[error("unknown group spec '{0}'")]
    UnknownGroupSpec(String),

    #[error("unknown element label '{label}' in group {group}")]
    UnknownLabel { label: String, group: String },

    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {0} is too large")]
    FieldTooLarge(u64),

    #[error("index {index} does not divide {modulus}")]
    NotDivisor { index: u64, modulus: u64 },

    #[error("every element of a field of even order is a square")]
    EvenFieldOrder,

    #[error("internal error: {0}")]
    Internal(String),

    #[error("blocks are not disjoint: element {0} occurs twice")]
    NotDisjoint(usize),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: String, found: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("parameters ({n},{m},{k},{lambda}) are not admissible")]
    Inadmissible {
        n: usize,
        m: usize,
        k: usize,
        lambda: usize,
    },

    #[error("construction failed verification: {0}")]
    VerificationFailed(String),

    #[error("malformed family: {0}")]
    FamilyFormat(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
