use thiserror::Error;

/// Errors raised by the library. Resource-limit variants signal that a
/// computation was refused, not that a mathematical statement failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Coxeter system: {0}")]
    InvalidSystem(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("generator index {index} out of range for {rank} generators")]
    InvalidGenerator { index: usize, rank: usize },

    #[error("word of length {len} exceeds the braid-search cap {cap}")]
    WordTooLong { len: usize, cap: usize },

    #[error("ball of radius {radius} exceeds the enumeration cap of {cap} elements")]
    BallTooLarge { radius: usize, cap: usize },

    #[error("vertex set {0:?} is not a clique")]
    NotAClique(Vec<usize>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter {0} has no exact square root in the chosen scalar field")]
    InexactParameter(String),

    #[error("elements belong to different algebras")]
    MismatchedAlgebras,

    #[error("operation requires a right-angled Coxeter system")]
    NotRightAngled,

    #[error("element is not homogeneous of degree {0}")]
    NotHomogeneous(usize),

    #[error("element degree {degree} exceeds basis radius {radius}")]
    DegreeExceedsRadius { degree: usize, radius: usize },

    #[error("evaluation at a pole: {0}")]
    Pole(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
