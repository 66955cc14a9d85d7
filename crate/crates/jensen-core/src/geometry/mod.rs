//! Exact-at-machine-precision polytope geometry.
//!
//! Bodies are built from vertex lists by brute-force facet enumeration: every
//! d-subset of the input points is a candidate hyperplane, one-sided
//! candidates are kept, and coplanar candidates are merged into facets. Facet
//! measures and centroids come from fan triangulations, body volume and
//! centroid from the cone decomposition over an interior point. Correctness
//! over asymptotics: inputs are capped at 64 vertices and roughly 5·10⁶
//! candidate subsets.

mod body;
mod hull;
mod point;
mod simplex;

pub use body::{build_body, ConvexBody};
pub use hull::{facet_enumeration, Facet, HullFacets};
pub use point::Point;
pub use simplex::{simplex_measure, Simplex};

pub use hull::triangulate_facet;
