use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n = {0} is not a valid field parameter (must be square-free and not 0 or 1)")]
    InvalidParam(i64),
    #[error("({a}, ?, {c}) is not in A({n}): {c} does not divide {a}^2 - {n}")]
    NotMember { n: i64, a: i64, c: i64 },
    #[error("({a}, {b}, {c}) does not satisfy bc = a^2 - n for n = {n}")]
    BadTriple { n: i64, a: i64, b: i64, c: i64 },
    #[error("translation by zero")]
    DegenerateShift,
    #[error("shift {shift} is not a nonzero multiple of lambda = {lambda}")]
    ShiftNotMultiple { shift: i64, lambda: i64 },
    #[error("lambda = {0} is not supported here")]
    BadLambda(i64),
    #[error("triples belong to different fields: n = {0} vs n = {1}")]
    MismatchedN(i64, i64),
    #[error("{0}: argument out of domain")]
    Domain(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid exploration config: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("integer overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Errors caused by bad user-supplied parameters rather than arithmetic failure.
    pub fn is_parameter_error(&self) -> bool {
        !matches!(self, Error::Overflow)
    }
}
