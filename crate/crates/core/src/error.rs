use thiserror::Error;

/// Errors raised while validating inputs or running a procedure.
///
/// Positions are 1-based positions within the offending input list. Family
/// cells are reported as the rank index `i` and cardinality `m`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("value at position {0} is outside [0, 1] or not finite")]
    OutOfRange(usize),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("critical values decrease at position {0}")]
    NotMonotone(usize),
    #[error("critical value ({i}, {m}) is smaller than ({prev}, {m}); rows must be nondecreasing in i", prev = .i - 1)]
    NotMonotoneInI { i: usize, m: usize },
    #[error("critical value ({i}, {m}) is larger than ({i}, {prev}); columns must be nonincreasing in m", prev = .m - 1)]
    NotMonotoneInM { i: usize, m: usize },
    #[error("k = {k} must satisfy 1 <= k <= n = {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("alpha = {0} must lie strictly between 0 and 1")]
    AlphaOutOfRange(f64),
    #[error("cardinality {m} outside {k}..={n}")]
    CardinalityOutOfRange { m: usize, k: usize, n: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("closed testing over n = {n} hypotheses exceeds the exhaustive limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("schedule normalizer is zero; the base schedule is all zeros")]
    DegenerateSchedule,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
