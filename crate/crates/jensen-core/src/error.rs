use thiserror::Error;

/// Errors raised by geometry construction, certification, and integration.
#[derive(Debug, Error)]
pub enum Error {
    /// Input points do not span the ambient space.
    #[error("input points do not span R^{dim} (affine rank {rank})")]
    DegenerateInput { dim: usize, rank: usize },

    /// The brute-force hull would enumerate too many candidate hyperplanes.
    #[error("hull budget exceeded: C({n},{d}) = {combinations} candidate hyperplanes (limit {budget})")]
    TooLarge {
        n: usize,
        d: usize,
        combinations: u128,
        budget: u128,
    },

    /// An input point is not a vertex of the hull of the inputs.
    #[error("input point {index} is not an extreme point of the hull")]
    NonExtremeVertex { index: usize },

    /// Ambient dimension outside the supported range.
    #[error("dimension {0} is unsupported (supported: 2..=6)")]
    UnsupportedDimension(usize),

    /// A point that must lie strictly inside the body does not.
    #[error("origin is not strictly interior: clearance {clearance:.3e} at facet {facet}")]
    OriginNotInterior { facet: usize, clearance: f64 },

    /// The simplex solver could not produce a usable optimum.
    #[error("LP solver failed: {0}")]
    LpFailure(String),

    /// A point or function of the wrong dimension was supplied.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A quadratic test function with an indefinite matrix.
    #[error("quadratic matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    /// A body generator was given parameters outside its documented range.
    #[error("invalid body spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
