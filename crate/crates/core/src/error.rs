use thiserror::Error;

use crate::complex::VortexError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subset mask {mask:#x} has members outside a ground set of {n} points")]
    MalformedSubset { mask: u64, n: usize },

    #[error("space has no probe map")]
    NoProbe,

    #[error("ground set of {n} points exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("enumeration cap {0} is above the hard limit of {max}", max = crate::subset::EnumerationCap::HARD_LIMIT)]
    CapTooLarge(usize),

    #[error("ground set of {0} points exceeds the {max}-point limit", max = crate::subset::MAX_POINTS)]
    TooManyPoints(usize),

    #[error("point {point} is out of range for a ground set of {n} points")]
    PointOutOfRange { point: usize, n: usize },

    #[error("relation is not {0}")]
    InvalidRelation(&'static str),

    #[error("feature vector has {found} components, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("feature dimension must be at least 1")]
    ZeroDimension,

    #[error("probe covers {found} points but the space has {expected}")]
    ProbeSizeMismatch { expected: usize, found: usize },

    #[error("invalid decimal literal {0:?}")]
    InvalidDecimal(String),

    #[error("decimal {0:?} overflows the quantization grid")]
    QuantizationOverflow(String),

    #[error("quantum exponent {0} is out of range (0..=12)")]
    InvalidQuantum(u32),

    #[error("map does not fit the spaces: {0}")]
    SpaceMismatch(String),

    #[error("word lengths differ: {0} vs {1}")]
    WordLengthMismatch(usize, usize),

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("invalid generator basis: {0}")]
    InvalidBasis(String),

    #[error("function has {found} values but the group has order {expected}")]
    FunctionLength { expected: usize, found: usize },

    #[error("invalid mean weights: {0}")]
    InvalidWeights(String),

    #[error("bijection search is limited to {max} points, got {n}", max = crate::conjugacy::SEARCH_LIMIT)]
    SearchTooLarge { n: usize },

    #[error(transparent)]
    Vortex(#[from] VortexError),
}
