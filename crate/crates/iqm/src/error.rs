use thiserror::Error;

use crate::operator::DensityMatrix;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("not a density matrix: {reason}")]
    NotDensity { reason: String },

    #[error("negative eigenvalue {value:.3e} below tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("rank deficiency at input {index} (residual norm {residual:.3e})")]
    RankDeficient { index: usize, residual: f64 },

    #[error("Bloch vector outside the closed unit ball (norm {norm})")]
    OutsideBlochBall { norm: f64 },

    #[error("zero volume: information is infinite")]
    InfiniteInformation,

    #[error("volume unavailable for a {dim}-dimensional hull with {vertices} vertices")]
    VolumeUnavailable { dim: usize, vertices: usize },

    #[error("representations are not comparable: {0}")]
    Incomparable(String),

    #[error("basis does not span the trace-one space ({missing} directions missing, residual {residual:.3e})")]
    IncompleteBasis { missing: usize, residual: f64 },

    #[error("invalid parcel: {0}")]
    InvalidParcel(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("parameter out of range: {name} = {value}")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("vanishing outcome probability {0:.3e}")]
    VanishingProbability(f64),

    #[error("operator is not an effect (spectrum [{min:.3e}, {max:.3e}])")]
    NotEffect { min: f64, max: f64 },

    #[error("operator is not rank one (purity {purity})")]
    NotPure { purity: f64 },

    #[error(
        "separation observable does not commute with the outcome projector (defect {defect:.3e})"
    )]
    SeparationNotSupported { defect: f64 },

    #[error("updated sets intersect")]
    Intersecting(Box<Intersection>),

    #[error("state leaves the physical region: {0}")]
    Physicality(String),

    #[error("linear program failed: {0}")]
    Lp(String),
}

/// Evidence that the two components of an updated double parcel share a point.
#[derive(Debug, Clone)]
pub struct Intersection {
    pub witness: DensityMatrix,
    pub report: crate::measurement::UpdateReport,
}
