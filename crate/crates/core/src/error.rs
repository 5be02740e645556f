use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unknown field descriptor `{0}`")]
    UnknownDescriptor(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point must be nonzero")]
    ZeroPoint,
    #[error("zero kernel rejected")]
    ZeroKernel,
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error("mixed parity in kernel expansion")]
    MixedParity,
    #[error("polynomial is not harmonic: {0}")]
    NotHarmonic(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("division condition fails at degree {0}")]
    DivisionFails(u32),
    #[error("element is not invertible (min |symbol| = {0:e})")]
    NotInvertible(f64),
    #[error("truncation level {eps} below the resolution floor {floor}")]
    EpsilonBelowFloor { eps: f64, floor: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("out of supported range: {0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("flag `{flag}` claimed but not verified: {detail}")]
    FlagNotVerified { flag: &'static str, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
