use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MrcError {
    #[error("alpha must be finite, positive and different from 1 (got {0})")]
    InvalidAlpha(f64),

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("class index {index} out of range for {num_classes} classes")]
    LabelOutOfRange { index: usize, num_classes: usize },

    #[error("need at least two classes (got {0})")]
    TooFewClasses(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dataset has no samples")]
    EmptyDataset,

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("lambda[{index}] = {value} is negative or not finite")]
    InvalidLambda { index: usize, value: f64 },

    #[error("confidence level delta must lie in (0, 1) (got {0})")]
    InvalidDelta(f64),

    #[error("exact 0-1 path supports at most {max} classes (got {num_classes})")]
    TooManyClasses { num_classes: usize, max: usize },

    #[error("operation not supported for this loss: {0}")]
    UnsupportedLoss(&'static str),

    #[error("operation not supported for this model variant: {0}")]
    UnsupportedVariant(&'static str),

    #[error("incompatible inputs: {0}")]
    Incompatible(String),

    #[error("bisection failed to bracket the root for nu")]
    BracketFailure,

    #[error("linear program is infeasible: {0}")]
    InfeasibleLp(&'static str),

    #[error("linear program is unbounded: {0}")]
    UnboundedLp(&'static str),

    #[error("alpha rule violates its dual constraint: sum of base probabilities is {0}")]
    AlphaInfeasible(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, MrcError>;
