use thiserror::Error;

use crate::family::SetMask;

/// Errors raised by the family, construction, entropy, and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..=62")]
    GroundSetSize(usize),
    #[error("set {set} does not fit in a ground set of size {n}")]
    SetOutOfRange { set: SetMask, n: usize },
    #[error("a family must contain at least one set")]
    EmptyFamily,
    #[error("element {element} is outside 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("k = {k} is outside the valid range {min}..={max}")]
    KOutOfRange { k: usize, min: usize, max: usize },
    #[error("support has {support} elements, fewer than k = {k}")]
    SupportTooSmall { support: usize, k: usize },
    #[error("relabeling search needs a support of at most {max} elements, got {support}")]
    SupportTooLarge { support: usize, max: usize },
    #[error("family would have {size} members, more than the limit of {limit}")]
    FamilyTooLarge { size: u128, limit: u128 },
    #[error("invalid near-cube: {0}")]
    InvalidNearCube(&'static str),
    #[error("parts overlap on elements {0}")]
    OverlappingSupports(SetMask),
    #[error("invalid frequency count: need 0 < f <= p, got f = {f}, p = {p}")]
    InvalidCount { f: u64, p: u64 },
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("alpha = {0} is outside the admissible range {1}")]
    AlphaOutOfRange(String, &'static str),
    #[error("maximum element frequency {max_frequency} exceeds alpha = {alpha}")]
    FrequencyAboveAlpha {
        max_frequency: String,
        alpha: String,
    },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(&'static str),
    #[error("set {set} meets the top elements {top}")]
    CandidateMeetsTop { set: SetMask, top: SetMask },
    #[error("family is not union-closed")]
    NotUnionClosed,
    #[error("bound is vacuous: m = {m} does not exceed 2^(k-1) = {cube}")]
    VacuousBound { m: usize, cube: u64 },
    #[error("enumeration supports 1 <= n <= {max}, got {n}")]
    EnumerationSize { n: usize, max: usize },
    #[error("no size range covers m = {m} at k = {k}")]
    UncoveredRange { m: u64, k: usize },
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A malformed family description, with a 1-based position when one is known.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
