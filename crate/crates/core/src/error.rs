use thiserror::Error;

/// Errors from tensor construction and from the usage contracts of the
/// localization, certificate, oracle, and raster operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tensor order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("tensor dimension must be at least 1, got {0}")]
    DimTooSmall(usize),
    #[error("index tuple has {got} components, expected {expected}")]
    WrongTupleLength { expected: usize, got: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate index tuple {0:?}")]
    DuplicateIndexTuple(Vec<usize>),
    #[error("tensor entries must be finite")]
    NonFiniteEntry,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("indices must differ, both are {0}")]
    IndicesEqual(usize),
    #[error("{family} requires dimension n >= 2")]
    RequiresDimTwo { family: &'static str },
    #[error("tolerance must be finite and nonnegative, got {0}")]
    InvalidTolerance(f64),
    #[error("eigenvector must be nonzero")]
    ZeroVector,
    #[error("invalid oracle config: {0}")]
    InvalidConfig(String),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("window must satisfy re_min < re_max and im_min < im_max")]
    InvalidWindow,
    #[error("raster resolution must be at least 2x2, got {width}x{height}")]
    ResolutionTooSmall { width: usize, height: usize },
    #[error("raster layers must share the same window and resolution")]
    LayerMismatch,
    #[error("emit requires at least one layer")]
    NoLayers,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("csv line {line}: {message}")]
    CsvFormat { line: usize, message: String },
}

/// Parse failure for the tensor text format, with the 1-based source line.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("missing header `m n`")]
    MissingHeader,
    #[error("header must be two positive integers `m n`")]
    BadHeader,
    #[error("tensor order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("tensor dimension must be at least 1, got {0}")]
    DimTooSmall(usize),
    #[error("expected {expected} indices followed by one or two numbers, got {got} fields")]
    BadFieldCount { expected: usize, got: usize },
    #[error("bad index `{0}`")]
    BadIndex(String),
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("entry value must be finite")]
    NonFinite,
    #[error("duplicate index tuple {0:?}")]
    DuplicateIndexTuple(Vec<usize>),
}

pub type Result<T> = std::result::Result<T, Error>;
