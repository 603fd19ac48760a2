use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("interval is reversed: lower {lower} > upper {upper}")]
    ReversedBounds { lower: f64, upper: f64 },

    #[error(
        "search space needs lower < upper in every dimension (dimension {dim}: [{lower}, {upper}])"
    )]
    DegenerateSpace { dim: usize, lower: f64, upper: f64 },

    #[error("bound vectors differ in length: {lower} lower vs {upper} upper")]
    BoundLengthMismatch { lower: usize, upper: usize },

    #[error("construction time must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("iteration {t} outside schedule range 1..={total}")]
    IterationOutOfRange { t: usize, total: usize },

    #[error("hill shape parameters must be strictly positive")]
    NonPositiveShape,

    #[error("terminal shrink factor must lie in (0, 1), got {0}")]
    InvalidShrink(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("benchmark {0} needs a random stream for its noise term")]
    MissingStream(&'static str),

    #[error("unknown benchmark {0:?}")]
    UnknownBenchmark(String),

    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("array factor vanishes everywhere on the grid")]
    ZeroPattern,

    #[error("pattern has no local minimum flanking the main lobe")]
    FlatPattern,

    #[error("angular resolution {0} must split 180 degrees into at least 180 equal steps")]
    InvalidResolution(f64),

    #[error("invalid array: {0}")]
    InvalidArray(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
