use thiserror::Error;

use crate::surfaces::MeshError;

/// Everything that can go wrong while evaluating an invariant.
///
/// The variants carry enough context to point at the offending grid node,
/// preimage, or surface location, so callers can report failures without
/// re-running the computation.
#[derive(Debug, Error)]
pub enum TopoError {
    #[error("non-finite sample {value} at {location}")]
    NumericalDomain { value: f64, location: String },

    #[error("raw value {raw:.6} is not within {tol:.1e} of an integer (residual {residual:.3e})")]
    NotNearInteger { raw: f64, residual: f64, tol: f64 },

    #[error("critical value: |f'({point:.6})| = {derivative:.3e} <= 1e-8, value is not regular")]
    CriticalValue { point: f64, derivative: f64 },

    #[error("vector field vanishes on the surface: |V| = {magnitude:.3e} at {location}")]
    ZeroOnSurface { magnitude: f64, location: String },

    #[error("Higgs field vanishes at {location}")]
    ZeroHiggs { location: String },

    #[error("singular point: |x| < 1e-12, the solid-angle form is undefined at the origin")]
    SingularPoint,

    #[error("unsupported dimension n = {0}; implemented for n = 1, 2, 3")]
    UnsupportedDimension(usize),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid snap tolerance {0}; must lie in (0, 0.5)")]
    InvalidTolerance(f64),

    #[error("zero refinement failed near chart point ({u:.6}, {v:.6}): {reason}")]
    ZeroRefinement { u: f64, v: f64, reason: String },

    #[error(transparent)]
    Mesh(#[from] MeshError),
}

pub type Result<T> = std::result::Result<T, TopoError>;
