use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared by every module.
///
/// Each variant belongs to one of three classes (input parse error,
/// violated precondition, internal invariant breach); [`Error::class`]
/// exposes the class so front ends can map it onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("no variable to eliminate")]
    NoVariable,

    #[error("map is degree <= 1 or degenerate")]
    DegenerateMap,

    #[error("P,Q not coprime")]
    NotCoprime,

    #[error("not an involution")]
    NotInvolution,

    #[error("not a cusp type: {0}")]
    NotCuspType(u32),

    #[error("impossible cover: negative ramification {0}")]
    ImpossibleCover(i64),

    #[error("multiplier must be a nonzero Gaussian integer")]
    BadMultiplier,

    #[error("lattice is not stable under conjugation: {0}")]
    LatticeNotConjStable(String),

    #[error("point is not on the curve")]
    OffCurve,

    #[error("singular curve: {0}")]
    SingularCurve(String),

    #[error("non-squarefree curve: {0}")]
    NonSquarefree(String),

    #[error("reducible curve: {0}")]
    Reducible(String),

    #[error("point is singular")]
    SingularPoint,

    #[error("line is a component of the curve")]
    LineIsComponent,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant breach: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) => ErrorClass::Parse,
            Error::Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Precondition,
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
