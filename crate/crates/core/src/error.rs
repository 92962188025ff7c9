use thiserror::Error;

/// Errors raised by dataset construction, validation and extension evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point must have at least one coordinate")]
    EmptyPoint,

    #[error("coordinate {index} is not finite ({value})")]
    NonFiniteCoordinate { index: usize, value: f64 },

    #[error("sample value is not finite ({0})")]
    NonFiniteValue(f64),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("order relation contains a cycle through `{0}`")]
    Cycle(String),

    #[error("poset has {size} elements, limit is {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("sample {index} repeats an earlier point with a different value ({first} vs {second})")]
    ConflictingSample { index: usize, first: f64, second: f64 },

    #[error("bounds must satisfy alpha < beta (alpha = {alpha}, beta = {beta})")]
    InvalidBounds { alpha: f64, beta: f64 },

    #[error("base utility value {value} lies outside ({alpha}, {beta})")]
    UtilityOutOfRange { value: f64, alpha: f64, beta: f64 },

    #[error("base utility is not strictly increasing on sampled pair {lo} < {hi}")]
    UtilityNotIncreasing { lo: String, hi: String },

    /// Carries the sample indices of a pair `lo < hi` with `f(hi) <= f(lo)`.
    #[error("partial utility is not separably increasing: {lo_point} < {hi_point} but f({hi_point}) <= f({lo_point})")]
    NotSeparablyIncreasing { lo: usize, hi: usize, lo_point: String, hi_point: String },

    #[error("the Pareto form requires the samples to form an antichain")]
    NotParetoSet,

    #[error("bounds a = {a}, b = {b} do not describe a separably increasing dataset")]
    UndefinedBounds { a: String, b: String },

    #[error("extension value is not finite")]
    NonFiniteExtension,
}

pub type Result<T> = std::result::Result<T, Error>;
