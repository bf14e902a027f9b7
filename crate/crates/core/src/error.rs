use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("equioscillation not reached after {iterations} iterations (best relative deviation {best_deviation:.3e})")]
    NonConvergence { iterations: usize, best_deviation: f64 },
    #[error("degree must be at least 1 (got {0})")]
    DegenerateDegree(usize),
    #[error("zeros and poles do not interlace: {0}")]
    InterlacingViolated(String),
    #[error("coefficient table schema error: {0}")]
    Schema(String),
    #[error("loaded approximation fails verification: {0}")]
    InvariantFailure(String),
    #[error("iterative solve did not converge in {iterations} iterations (relative residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("nonpositive pivot {pivot:.3e} at row {row}; matrix is not SPD")]
    NonPositivePivot { row: usize, pivot: f64 },
    #[error("dimension {n} exceeds dense oracle limit {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("diffusion coefficient {value} at x = {x} is not positive")]
    NonpositiveCoefficient { x: f64, value: f64 },
    #[error("index {index} out of range for {len} interior nodes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("L-shaped grid needs n + 1 even so that x = 0.5 is a grid line (got n = {0})")]
    GridParity(usize),
    #[error("rescaling value {delta} exceeds smallest eigenvalue {lambda1}")]
    SpectrumViolation { delta: f64, lambda1: f64 },
    #[error("alpha = {0} outside the admissible range")]
    AlphaOutOfRange(f64),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("reference vector has zero norm")]
    ZeroReference,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
