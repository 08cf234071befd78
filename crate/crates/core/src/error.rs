use thiserror::Error;

/// Everything that can go wrong while building or analysing a construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("level bases must be at least 2, got n={n}, m={m}")]
    BadBase { n: u32, m: u32 },

    #[error("digit ({i}, {j}) lies outside the {n}x{m} grid")]
    OutOfRangeDigit { i: u32, j: u32, n: u32, m: u32 },

    #[error("a level needs at least 2 digits, got {count}")]
    TooFewDigits { count: usize },

    #[error("the period must contain at least one level")]
    EmptyPeriod,

    #[error("level {index}: {source}")]
    InLevel {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("value {0} is outside the open interval (0, 1)")]
    DomainError(f64),

    #[error("depth range requires k < k', got k={k}, k'={k2}")]
    BadRange { k: usize, k2: usize },

    #[error("window {window} is too small, need at least {required}")]
    WindowTooSmall { window: usize, required: usize },

    #[error("word is not admissible at position {position}")]
    InvalidWord { position: usize },

    #[error("invalid approximate square: {0}")]
    InvalidSquare(String),

    #[error("invalid probability assignment: {0}")]
    InvalidProbability(String),

    #[error("level {level}: nonzero row counts are not constant")]
    FiberCountsNotConstant { level: usize },

    #[error("level {level}: n < m violates the aspect ordering")]
    AspectOrderViolated { level: usize },

    #[error("enumeration needs {needed} items, guard is {guard}")]
    GuardExceeded { needed: u128, guard: u128 },

    #[error("grid coordinates at depth {depth} exceed 128 bits")]
    Overflow { depth: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn in_level(index: usize, source: Error) -> Self {
        Error::InLevel {
            index,
            source: Box::new(source),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
