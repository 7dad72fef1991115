use thiserror::Error;

use crate::point::Point;

/// Errors raised by shape, gluing, floor-plan and oracle operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty shape has no meet")]
    EmptyShape,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cell set is not a skew shape: complement of {witness} in the closure is not downward closed")]
    NotSkew { witness: Point },

    #[error("cell set is not downward closed: {witness} is missing a predecessor")]
    NotDownwardClosed { witness: Point },

    #[error("shape is not connected")]
    NotConnected,

    #[error("shape is not anchored at the origin (meet is {meet})")]
    NotAbstract { meet: Point },

    #[error("component index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("ideal has infinite colength: no pure power of x{axis} among the generators")]
    InfiniteColength { axis: usize },

    #[error("height pair violates condition {condition}")]
    HeightPair { condition: &'static str },

    #[error("invalid gluing data: {0}")]
    InvalidGluing(String),

    #[error("invalid floor plan: {0}")]
    InvalidPlan(String),

    #[error("components {i} and {j} are not related under the placement order")]
    NotRelated { i: usize, j: usize },

    #[error("placement order contains a cycle through component {index}")]
    CyclicPlacement { index: usize },

    #[error("point {point} is not a cell of the shape")]
    NotInShape { point: Point },

    #[error("no unidirectional path exists between the given cells")]
    NoPath,

    #[error("floor plan is not right-free: h_b({index}) = {value}")]
    NotRightFree { index: usize, value: i64 },

    #[error("modulus {p} is not a prime exceeding the matrix size {d}")]
    BadPrime { p: u64, d: usize },

    #[error("matrices do not pairwise commute (generators {i} and {j})")]
    NonCommuting { i: usize, j: usize },

    #[error("matrix sizes differ")]
    SizeMismatch,

    #[error("unknown campaign {0:?}")]
    UnknownCampaign(String),
}

pub type Result<T> = std::result::Result<T, Error>;
