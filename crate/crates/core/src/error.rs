use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: i64, strands: usize },

    #[error("braid group needs at least {needed} strands, got {got}")]
    TooFewStrands { needed: usize, got: usize },

    #[error("position {pos} out of range (factorization has {len} factors)")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("direction must be +1 or -1, got {0}")]
    BadDirection(i32),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("inexact division in the Laurent ring")]
    InexactDivision,

    #[error("division by zero")]
    DivisionByZero,

    #[error("closure has {0} components, a knot was required")]
    NotAKnot(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no arc word found within length {0}")]
    ArcNotFound(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("n = {n}, {stage}: {source}")]
    Stage {
        n: usize,
        stage: &'static str,
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn at(n: usize, stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |e| Error::Stage {
            n,
            stage,
            source: Box::new(e),
        }
    }
}
