use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("non-finite parameter: {0}")]
    NonFinite(&'static str),

    #[error("plane wave needs a nonzero wavevector")]
    ZeroWavevector,

    #[error("invalid plane wave amplitude {0}; must be positive and finite")]
    InvalidAmplitude(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grids differ in shape or spacing")]
    GridMismatch,

    #[error("CFL violation: dt = {dt} exceeds {cfl} * h = {limit}")]
    CflViolation { dt: f64, cfl: f64, limit: f64 },

    #[error("invalid evolution config: {0}")]
    InvalidConfig(String),

    #[error("current source violates continuity: max |d(rho)/dt + div j| = {residual:e} at t = {time}")]
    ContinuityViolation { residual: f64, time: f64 },

    #[error("non-finite field value after step {0}")]
    NonFiniteField(usize),

    #[error("singular matrix (|det| = {0:e})")]
    Singular(f64),

    #[error("spatial block of the Lorentz matrix is numerically singular (|det| = {0:e})")]
    SingularSpatialBlock(f64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("malformed RSBV dump: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
