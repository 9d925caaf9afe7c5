use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension must be positive")]
    ZeroAmbient,

    #[error("family is empty")]
    EmptyFamily,

    #[error("members {first} and {second} of the family are not compatible")]
    Incompatible { first: usize, second: usize },

    #[error("invalid apartment shape n={n}, k={k}")]
    InvalidShape { n: usize, k: usize },

    #[error("index {index} out of range for n={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("a pair needs two distinct indices, got {0} twice")]
    DegeneratePair(usize),

    #[error("index {0} is both required and excluded")]
    OverlappingConstraints(usize),

    #[error("intersection size {m} is infeasible for n={n}, k={k}")]
    InfeasibleMeet { n: usize, k: usize, m: usize },

    #[error("member does not belong to the shape n={n}, k={k}")]
    NotAMember { n: usize, k: usize },

    #[error("({c}, {s}) is not a Pythagorean pair")]
    NotPythagorean { c: String, s: String },

    #[error("invalid orthogonal base: {0}")]
    InvalidBase(String),

    #[error("expected a subspace of dimension {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("subspaces are not orthogonal")]
    NotOrthogonal,

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("invalid fixture: {0}")]
    InvalidFixture(String),

    #[error("pipeline prerequisite unmet: {0}")]
    Prerequisite(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
