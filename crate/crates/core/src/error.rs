use thiserror::Error;

/// Everything that can go wrong while building or validating a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is not closed: row {row} has {len} entries or value {value} out of range for n = {n}")]
    NotClosed {
        n: usize,
        row: usize,
        len: usize,
        value: usize,
    },
    #[error("table is not a Latin square: value {value} repeats in the line through ({row}, {col})")]
    NotLatin { row: usize, col: usize, value: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("table is empty")]
    Empty,
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("set is not a subgroup: {a}*{b} = {product} is missing")]
    NotASubgroup { a: usize, b: usize, product: usize },
    #[error("set is not a subgroup: it does not contain the identity")]
    MissingIdentity,
    #[error("element {element} is out of range for a group of order {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("subgroup is not central: {member} does not commute with {element}")]
    NotCentral { member: usize, element: usize },
    #[error("element {element} is not a central involution")]
    NotCentralInvolution { element: usize },
    #[error("group of order {order} exceeds the size cap {cap}")]
    SizeLimitExceeded { order: u128, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
