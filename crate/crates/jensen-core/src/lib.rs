//! Convex-polytope geometry and a certifier for Jensen domains.
//!
//! A compact convex body `Ω ⊆ ℝ^d` is a *Jensen domain* when the average of
//! every convex function over `Ω` is at most its average over the boundary
//! `∂Ω` — the higher-dimensional analogue of the Hermite–Hadamard inequality
//! on an interval. A *Jensen candidate* is a body whose centroid coincides
//! with the centroid of its boundary; this is necessary (linear functions
//! separate the two centroids otherwise) but not sufficient in dimensions
//! three and up.
//!
//! This crate decides a checkable sufficient condition for polytopes: if some
//! translate places every facet hyperplane within `(d+1)|Ω|/|∂Ω|` of the
//! origin, a candidate body is certified as a Jensen domain. The crate also
//! verifies the inequality itself numerically, with exact simplex quadrature
//! for affine and quadratic test functions and seeded Monte Carlo for
//! max-of-affine ones.
//!
//! Modules:
//!
//! - [`geometry`]: brute-force facet enumeration, triangulation, measures and
//!   centroids of desk-scale polytopes (dimension 2 through 6).
//! - [`lp`]: a dense two-phase simplex solver for the tiny linear programs
//!   behind the Chebyshev center and the optimal translate.
//! - [`certify`]: the candidate test, cone distances, `h_max`, and the
//!   certificate report.
//! - [`convex_fn`]: affine / max-of-affine / positive-semidefinite quadratic
//!   test functions and their supporting affine minorants.
//! - [`integrate`]: exact and Monte Carlo integrals over bodies and their
//!   boundaries, the boundary-minus-body gap, and the radial cone sampler.
//! - [`bodies`]: deterministic generators for the test-body zoo.

pub mod bodies;
pub mod certify;
pub mod convex_fn;
mod error;
pub mod geometry;
pub mod integrate;
mod linalg;
pub mod lp;
pub mod tolerances;

pub use error::{Error, Result};

pub use certify::{
    candidate_check, certify, certify_with_tol, chebyshev_center, cone_distance, h_max,
    optimal_translate, shell_certify, CertificateReport, ShellReport,
};
pub use convex_fn::{AffineFn, ConvexFunction};
pub use geometry::{ConvexBody, Facet, Point, Simplex};
pub use integrate::{
    hh_gap, integrate_body, integrate_body_monte_carlo, integrate_boundary,
    integrate_boundary_monte_carlo, lemma_check, radial_sample, GapEstimate, IntegralEstimate,
    McConfig, Method, RadialSampler,
};
