use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("point {0} repeated within one cycle")]
    RepeatedPoint(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group has more than {cap} elements")]
    GroupOverflow { cap: usize },
    #[error("permutation does not preserve 1..={0} setwise")]
    NotSetwiseInvariant(usize),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("stack kind mismatch: {0:?} vs {1:?}")]
    KindMismatch(crate::objects::StackKind, crate::objects::StackKind),
    #[error("list refiner needs at least one refiner")]
    EmptyRefinerList,
    #[error("refiner target is not a subgroup")]
    NotASubgroup,
    #[error("label {0:?} is reserved")]
    ReservedLabel(String),
    #[error("unsupported query: {0}")]
    Unsupported(String),
    #[error("degree {degree} exceeds the oracle limit {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
