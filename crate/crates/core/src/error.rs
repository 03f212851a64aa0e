use thiserror::Error;

use crate::dsl::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coefficient would have to combine `+inf` with `-inf`.
    #[error("indeterminate coefficient at x^{0} (+inf combined with -inf)")]
    IndeterminateCoefficient(usize),
    #[error("polynomial has an infinite coefficient at x^{0}")]
    InfiniteCoefficient(usize),
    #[error("polynomial constant term {0} is not an integer")]
    NonIntegerConstant(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scale factor must be positive and finite, got {0}")]
    NonpositiveScale(f64),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("image of a cell degenerated under floating-point rounding")]
    DegenerateImage,
    #[error("set is unbounded")]
    UnboundedSet,
    #[error("set is empty")]
    EmptySet,
    #[error("cannot place {0} distinct points in a point cell")]
    CellTooSmall(usize),
    #[error("no admissible N found up to {0}")]
    SearchExhausted(u64),
    #[error("sample would need {0} points, above the configured limit")]
    SampleTooLarge(u64),
    #[error("construction check failed: {0}")]
    ConstructionViolation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("definition cycle through `{0}`")]
    CyclicDefinition(String),
    #[error("duplicate definition of `{0}`")]
    DuplicateDefinition(String),
}
