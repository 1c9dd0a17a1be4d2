use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),
    #[error("group order {order} out of range (must be between 1 and {max})")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coefficient {index} has imaginary part {imag:e}; input is not in R(G) (x) R")]
    NonRealCoefficient { index: usize, imag: f64 },
    #[error("Clifford rank {0} out of range (1..=12)")]
    RankOutOfRange(usize),
    #[error("rotation planes overlap or exceed the module rank")]
    OverlappingPlanes,
    #[error("a fixed direction (angle {0}) was passed as perpendicular")]
    ZeroAngleInPerp(f64),
    #[error("fixed subspace dimension {0} exceeds the quadrature limit of 4")]
    FixedDimensionTooLarge(usize),
    #[error("quadrature did not converge: refinements differ by {diff:e} (tolerance {tol:e})")]
    QuadratureNotConverged { diff: f64, tol: f64 },
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("series variable count or truncation degree mismatch")]
    SeriesShapeMismatch,
    #[error("weight has modulus {0}, expected 1")]
    NonUnitWeight(f64),
    #[error("degenerate rotation weight at an isolated fixed point")]
    DegenerateWeight,
    #[error("cut {0} lies on the spectrum")]
    CutOnSpectrum(f64),
    #[error("eigenspace character at {eigenvalue} is not a genuine character")]
    NotACharacter { eigenvalue: f64 },
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("smoothed-sum extrapolation diverged: successive estimates differ by {0:e}")]
    ExtrapolationDiverged(f64),
    #[error("grid too coarse: {count} crossings in cell [{lo}, {hi}]")]
    GridTooCoarse { lo: f64, hi: f64, count: usize },
    #[error("route mismatch in {check}: distance {distance:e}")]
    RouteMismatch { check: String, distance: f64 },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
