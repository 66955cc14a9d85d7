//! Numerical tolerances shared across the crate.
//!
//! Geometric coincidence tests are scale-invariant: they use
//! [`GEO_REL`] times the body diameter, available as
//! [`ConvexBody::geo_tol`](crate::geometry::ConvexBody::geo_tol).

/// Relative geometric coincidence tolerance. Every "lies on the hyperplane",
/// "same point", and "strictly interior" test uses `GEO_REL * diameter`.
pub const GEO_REL: f64 = 1e-9;

/// Merge tolerance on unit-normal components when coplanar candidate
/// hyperplanes are folded into one facet. Normals are unit vectors, so this
/// is scale-free.
pub const NORMAL_MERGE: f64 = 1e-9;

/// Certification margin as a fraction of the bound `(d+1)|Ω|/|∂Ω|`. Separates
/// the non-strict outcome (`h* ≤ bound`) from the strict one (`h* < bound`)
/// robustly at machine precision.
pub const CERT_REL: f64 = 1e-8;

/// Default tolerance on the diameter-scaled centroid gap of the candidate
/// test. Physical inputs are near-candidates at best, so the CLI exposes this
/// as a flag.
pub const CANDIDATE_TOL: f64 = 1e-7;

/// Hard budget on the number of d-subsets the brute-force hull may visit.
pub const HULL_BUDGET: u128 = 5_000_000;

/// Largest vertex count accepted by the hull (desk scale).
pub const MAX_VERTICES: usize = 64;

/// Pivot and reduced-cost tolerance of the dense simplex solver.
pub const LP_EPS: f64 = 1e-10;

/// Feasibility tolerance for the phase-1 optimum of the simplex solver,
/// relative to the constraint scale.
pub const LP_FEAS: f64 = 1e-7;

/// Bound on `|‖n‖ − 1|` for facet normals.
pub const UNIT_NORMAL: f64 = 1e-12;
