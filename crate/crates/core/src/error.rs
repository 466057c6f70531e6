use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("non-associative structure constants at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit axiom fails on basis generator {0}")]
    BadUnit(usize),
    #[error("malformed coordinates: {0}")]
    MalformedCoords(String),
    #[error("additive shape entry {0} is not a prime power >= 2")]
    BadShape(u64),
    #[error("bad order {0}")]
    BadOrder(u64),
    #[error("unsupported field order {0}")]
    UnsupportedFieldOrder(u64),
    #[error("polynomial is reducible over F_{0}")]
    Reducible(u64),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("set is not a two-sided ideal")]
    NotAnIdeal,
    #[error("set is not a subring")]
    NotASubring,
    #[error("subrings do not cover the ring")]
    NotACover,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("isomorphism search exceeded its budget of {0} nodes")]
    Timeout(u64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, RingError>;
