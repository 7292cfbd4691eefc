use thiserror::Error;

use crate::semifield::SemifieldTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("semifield tags differ: {0:?} vs {1:?}")]
    TagMismatch(SemifieldTag, SemifieldTag),
    #[error("expected a {expected:?} value, got {got:?}")]
    WrongTag {
        expected: SemifieldTag,
        got: SemifieldTag,
    },
    #[error("rational function has a pole at {0}")]
    EvaluationAtPole(String),
    #[error("elements belong to different root data")]
    DatumMismatch,
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("words {0:?} and {1:?} do not represent the same Weyl element")]
    InvalidWordPair(Vec<usize>, Vec<usize>),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("{0} is not a left descent")]
    NotADescent(usize),
    #[error("element is not supported on the longest element")]
    NotLongest,
    #[error("element has a negative tropical coordinate")]
    NotInN,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("charts lie in different pieces")]
    PieceMismatch,
    #[error("operation needs a type A root datum")]
    TypeNotSupported,
    #[error("factorization hit a zero pivot")]
    NotTotallyPositive,
    #[error("search space of {0} points exceeds the guard {1}")]
    BoxTooLarge(u128, u128),
    #[error("parse error at {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
    #[error("unknown procedure `{0}`")]
    UnknownProcedure(String),
    #[error("bond between {0} and {1} is not of order 4 or 6")]
    NotFoldable(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(pos: usize, expected: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        expected: expected.into(),
    }
}
