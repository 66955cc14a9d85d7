//! The checkable sufficient condition for a Jensen domain.
//!
//! A candidate body (body and boundary centroids coincide) is certified when
//! some translate places every facet hyperplane within `(d+1)|Ω|/|∂Ω|` of the
//! origin. The certificate searches all translates: the quantity
//! `h_max(Ω − c) = max_i (offset_i − normal_i·c)` is minimized over `c` by a
//! linear program, and the best value is compared against the bound. Strict
//! inequality additionally licenses the equality characterization: the
//! boundary-vs-body gap then vanishes only for affine functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Facet, Point};
use crate::lp::LinearProgram;
use crate::tolerances::{CANDIDATE_TOL, CERT_REL};

/// Outcome of the candidate and certification checks with all intermediate
/// quantities.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateReport {
    /// Body and boundary centroids coincide within the candidate tolerance.
    pub is_candidate: bool,
    /// `|body_centroid − boundary_centroid| / diameter`.
    pub centroid_gap: f64,
    /// The translate at which `h_max` was evaluated (the LP minimizer,
    /// lexicographically smallest optimal vertex on degenerate optima).
    pub origin_used: Point,
    /// Smallest achievable `h_max` over all translates.
    pub h_max: f64,
    /// `(d+1)·volume/surface_area`.
    pub bound: f64,
    /// `is_candidate` and `h_max ≤ bound` (within the certification margin).
    pub certified: bool,
    /// `is_candidate` and `h_max < bound` strictly; enables the conclusion
    /// that only affine functions achieve equality of the two averages.
    pub strict: bool,
    /// Radius of the largest inscribed ball.
    pub inscribed_radius: f64,
    /// All cone distances at the Chebyshev center agree, i.e. every facet is
    /// tangent to the inscribed ball; `h_max` there equals `d·volume/surface_area`.
    pub tangent_identity_holds: bool,
}

/// Distance from a strictly interior `origin` to the facet hyperplane:
/// `offset − normal·origin`. This is the cone volume measure of the facet
/// with respect to `origin`.
pub fn cone_distance(body: &ConvexBody, facet: &Facet, origin: &Point) -> Result<f64> {
    body.require_interior(origin)?;
    Ok(facet.clearance(origin))
}

/// Largest cone distance over the facets — the supremum of the cone volume
/// measure over differentiable boundary points, attained per facet.
pub fn h_max(body: &ConvexBody, origin: &Point) -> Result<f64> {
    body.require_interior(origin)?;
    Ok(body
        .facets()
        .iter()
        .map(|f| f.clearance(origin))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Whether the body and boundary centroids coincide within `tol`, together
/// with the diameter-scaled gap.
pub fn candidate_check(body: &ConvexBody, tol: f64) -> (bool, f64) {
    let gap = body.body_centroid().dist(body.boundary_centroid()) / body.diameter();
    (gap <= tol, gap)
}

/// Center and radius of the largest inscribed ball: maximizes `r` subject to
/// `normal_i·c + r ≤ offset_i`. On degenerate optima the lexicographically
/// smallest optimal center is returned.
pub fn chebyshev_center(body: &ConvexBody) -> Result<(Point, f64)> {
    let d = body.dim();
    // Variables (c_1, …, c_d, r); minimize −r.
    let mut objective = vec![0.0; d + 1];
    objective[d] = -1.0;
    let mut lp = LinearProgram::minimize(objective);
    for f in body.facets() {
        let mut row = f.normal().to_vec();
        row.push(1.0);
        lp.add_le(row, f.offset());
    }
    let mut nonneg = vec![0.0; d + 1];
    nonneg[d] = -1.0;
    lp.add_le(nonneg, 0.0);
    let sol = lp.solve_lex_min()?;
    let radius = sol.x[d];
    if radius <= 0.0 {
        return Err(Error::LpFailure(format!(
            "inscribed radius not positive: {radius:.3e}"
        )));
    }
    Ok((Point::new(sol.x[..d].to_vec()), radius))
}

/// The translate minimizing `h_max` over points of the body: minimizes `t`
/// subject to `offset_i − normal_i·c ≤ t` and `normal_i·c ≤ offset_i`.
/// Returns `(c*, h*)`; `h*` is always unique, and on degenerate optima `c*`
/// is the lexicographically smallest optimal vertex (which may touch the
/// boundary).
///
/// The infimum over strictly interior points equals the minimum over the
/// closed body by continuity, so the membership constraints lose nothing and
/// keep degenerate optima from wandering outside.
pub fn optimal_translate(body: &ConvexBody) -> Result<(Point, f64)> {
    let d = body.dim();
    // Variables (c_1, …, c_d, t); minimize t.
    let mut objective = vec![0.0; d + 1];
    objective[d] = 1.0;
    let mut lp = LinearProgram::minimize(objective);
    for f in body.facets() {
        let mut row: Vec<f64> = f.normal().iter().map(|c| -c).collect();
        row.push(-1.0);
        lp.add_le(row, -f.offset());
        let mut member = f.normal().to_vec();
        member.push(0.0);
        lp.add_le(member, f.offset());
    }
    let sol = lp.solve_lex_min()?;
    Ok((Point::new(sol.x[..d].to_vec()), sol.x[d]))
}

/// Runs the full certification with the default candidate tolerance.
pub fn certify(body: &ConvexBody) -> Result<CertificateReport> {
    certify_with_tol(body, CANDIDATE_TOL)
}

/// Runs the full certification: candidate check, optimal translate against
/// the bound `(d+1)|Ω|/|∂Ω|`, and the inscribed-ball tangency identity.
pub fn certify_with_tol(body: &ConvexBody, candidate_tol: f64) -> Result<CertificateReport> {
    let (is_candidate, centroid_gap) = candidate_check(body, candidate_tol);
    let (origin_used, h_star) = optimal_translate(body)?;
    let bound = (body.dim() as f64 + 1.0) * body.volume() / body.surface_area();
    let margin = CERT_REL * bound;
    let certified = is_candidate && h_star <= bound + margin;
    let strict = is_candidate && h_star < bound - margin;

    let (center, inscribed_radius) = chebyshev_center(body)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for f in body.facets() {
        let c = f.clearance(&center);
        lo = lo.min(c);
        hi = hi.max(c);
    }
    let tangent_identity_holds = hi - lo <= body.geo_tol();

    Ok(CertificateReport {
        is_candidate,
        centroid_gap,
        origin_used,
        h_max: h_star,
        bound,
        certified,
        strict,
        inscribed_radius,
        tangent_identity_holds,
    })
}

/// Result of the spherical-shell test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShellReport {
    /// `inner ≥ 1` and `outer ≤ (1+1/d)^{1/d}` within tolerance.
    pub pass: bool,
    /// Smallest facet offset: the boundary stays outside the `inner`-ball.
    pub inner: f64,
    /// Largest vertex norm: the body fits in the `outer`-ball.
    pub outer: f64,
}

/// Shell containment test about the origin: passes when the boundary lies in
/// `{x : 1 ≤ |x| ≤ (1+1/d)^{1/d}}`. The origin must be strictly interior.
///
/// `inner ≥ 1` is equivalent to the unit ball fitting inside the body (unit
/// normals make offsets orthogonal distances); `outer ≤ λ` is equivalent to
/// the body fitting in the λ-ball.
pub fn shell_certify(body: &ConvexBody) -> Result<ShellReport> {
    let origin = Point::origin(body.dim());
    body.require_interior(&origin)?;
    let inner = body
        .facets()
        .iter()
        .map(Facet::offset)
        .fold(f64::INFINITY, f64::min);
    let outer = body
        .vertices()
        .iter()
        .map(Point::norm)
        .fold(0.0f64, f64::max);
    let lambda = (1.0 + 1.0 / body.dim() as f64).powf(1.0 / body.dim() as f64);
    let tol = body.geo_tol();
    Ok(ShellReport {
        pass: inner >= 1.0 - tol && outer <= lambda + tol,
        inner,
        outer,
    })
}
