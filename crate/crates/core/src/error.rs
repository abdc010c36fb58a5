use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} at position {position} is outside [1, {rank}]")]
    LetterOutOfRange {
        letter: usize,
        position: usize,
        rank: usize,
    },

    #[error("not a permutation of 1..{degree}: {detail}")]
    InvalidPermutation { degree: usize, detail: String },

    #[error("{kind} not applicable at position {position}")]
    MoveNotApplicable { kind: &'static str, position: usize },

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("not a reduced word (or word poset) of the longest element: {0}")]
    NotLongest(String),

    #[error("not an ideal: element {below} lies below {above} but is missing")]
    NotAnIdeal { below: usize, above: usize },

    #[error("column {column} has {size} elements, requested {requested}")]
    CountOutOfRange {
        column: usize,
        size: usize,
        requested: usize,
    },

    #[error("not a strict partition: {0}")]
    NotStrict(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("poset has {0} elements, at most {max} supported", max = crate::poset::MAX_ELEMENTS)]
    TooLarge(usize),

    #[error("outside the domain: {0}")]
    OutOfDomain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} at n = {n} exceeds the budget n <= {limit}; pass --unbounded to override")]
    BudgetExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
