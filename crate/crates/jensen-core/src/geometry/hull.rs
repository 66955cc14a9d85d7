use crate::error::{Error, Result};
use crate::linalg;
use crate::tolerances::{HULL_BUDGET, MAX_VERTICES, NORMAL_MERGE};

use super::{ConvexBody, Point, Simplex};

/// One boundary face of a convex body: the supporting hyperplane
/// `{x : normal·x = offset}` with outward unit `normal`, the indices of all
/// body vertices lying on it, its (d−1)-dimensional surface measure, and its
/// centroid.
#[derive(Clone, Debug)]
pub struct Facet {
    normal: Vec<f64>,
    offset: f64,
    vertex_indices: Vec<usize>,
    measure: f64,
    centroid: Point,
}

impl Facet {
    /// Outward unit normal.
    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    /// Hyperplane offset: `normal·x = offset` on the facet.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Indices into the owning body's vertex list of every vertex on this
    /// facet (at least d, spanning the hyperplane).
    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    /// (d−1)-dimensional surface measure; positive by construction.
    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn centroid(&self) -> &Point {
        &self.centroid
    }

    /// Signed clearance `offset − normal·p`: positive when `p` is on the
    /// interior side. For a strictly interior `p` this is the orthogonal
    /// distance from `p` to the facet hyperplane — the cone volume measure of
    /// the facet with respect to `p`.
    pub fn clearance(&self, p: &Point) -> f64 {
        self.offset - linalg::dot(&self.normal, p.coords())
    }

    /// Translates the facet by `shift` (offset moves by `normal·shift`).
    pub(crate) fn translated(&self, shift: &Point) -> Facet {
        Facet {
            normal: self.normal.clone(),
            offset: self.offset + linalg::dot(&self.normal, shift.coords()),
            vertex_indices: self.vertex_indices.clone(),
            measure: self.measure,
            centroid: self.centroid.add(shift),
        }
    }
}

/// Output of [`facet_enumeration`]: the hull facets plus the indices of input
/// points that are not extreme (the caller decides whether that is an error).
#[derive(Debug)]
pub struct HullFacets {
    pub facets: Vec<Facet>,
    pub non_extreme: Vec<usize>,
}

/// Brute-force facet enumeration of the convex hull of `points` in ℝ^dim.
///
/// Every d-subset spanning a hyperplane is a candidate; candidates with all
/// points on one side are kept, oriented outward, and merged when coplanar
/// within tolerance. Rejects inputs that are not full-dimensional and inputs
/// whose subset count exceeds the [`HULL_BUDGET`].
pub fn facet_enumeration(points: &[Point], dim: usize) -> Result<HullFacets> {
    if !(2..=6).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if points.iter().any(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: points.iter().find(|p| p.dim() != dim).unwrap().dim(),
        });
    }
    let n = points.len();
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            d: dim,
            combinations: binomial(n, dim),
            budget: HULL_BUDGET,
        });
    }
    let coords: Vec<Vec<f64>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let scale = diameter(&coords);
    let geo_tol = crate::tolerances::GEO_REL * scale;

    // Full dimensionality: affine rank of the inputs must be dim.
    let affine_rank = affine_rank(&coords, geo_tol);
    if n < dim + 1 || affine_rank < dim {
        return Err(Error::DegenerateInput {
            dim,
            rank: affine_rank,
        });
    }

    let hyperplanes = enumerate_hyperplanes(&coords, dim, geo_tol)?;

    // Near-duplicate points are never extreme; flag the later index.
    let mut non_extreme: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in 0..i {
            if linalg::dist(&coords[i], &coords[j]) <= geo_tol {
                non_extreme.push(i);
                break;
            }
        }
    }

    // A point is extreme iff the normals of the facets through it span ℝ^d.
    for (i, _) in coords.iter().enumerate() {
        if non_extreme.contains(&i) {
            continue;
        }
        let normals: Vec<Vec<f64>> = hyperplanes
            .iter()
            .filter(|h| h.indices.contains(&i))
            .map(|h| h.normal.clone())
            .collect();
        if linalg::rank(&normals, 1e-7) < dim {
            non_extreme.push(i);
        }
    }
    non_extreme.sort_unstable();

    let mut facets = Vec::with_capacity(hyperplanes.len());
    for h in &hyperplanes {
        let simplices = facet_simplices(&coords, &h.indices, &h.normal, geo_tol)?;
        let mut measure = 0.0;
        let mut weighted = vec![0.0; dim];
        let mut kept = Vec::new();
        for idxs in simplices {
            let simplex = Simplex::new(idxs.iter().map(|&i| points[i].clone()).collect());
            let m = simplex.measure();
            if m <= 0.0 {
                continue;
            }
            let c = simplex.centroid();
            for (w, x) in weighted.iter_mut().zip(c.coords()) {
                *w += m * x;
            }
            measure += m;
            kept.push(idxs);
        }
        if measure <= 0.0 {
            // Cannot happen for a supporting hyperplane of a full-dimensional
            // hull; treat as degeneracy.
            return Err(Error::DegenerateInput {
                dim,
                rank: affine_rank,
            });
        }
        facets.push(Facet {
            normal: h.normal.clone(),
            offset: h.offset,
            vertex_indices: h.indices.clone(),
            measure,
            centroid: Point::new(weighted.into_iter().map(|w| w / measure).collect()),
        });
    }

    Ok(HullFacets {
        facets,
        non_extreme,
    })
}

/// Partitions a facet into (d−1)-simplices of the owning body's vertices.
///
/// Simplices overlap only on measure-zero sets and their measures sum to the
/// facet measure. The facet's vertices are ordered convexly (by angle in low
/// dimension, by recursive hulling above) and fanned from the first vertex.
pub fn triangulate_facet(facet: &Facet, body: &ConvexBody) -> Vec<Simplex> {
    let coords: Vec<Vec<f64>> = body.vertices().iter().map(|p| p.coords().to_vec()).collect();
    let idx_simplices = facet_simplices(&coords, facet.vertex_indices(), facet.normal(), body.geo_tol())
        .expect("facet of a valid body must triangulate");
    idx_simplices
        .into_iter()
        .map(|idxs| Simplex::new(idxs.iter().map(|&i| body.vertices()[i].clone()).collect()))
        .filter(|s| s.measure() > 0.0)
        .collect()
}

struct Hyperplane {
    normal: Vec<f64>,
    offset: f64,
    /// Indices of all input points on the hyperplane, ascending.
    indices: Vec<usize>,
}

/// All supporting hyperplanes of the point set, outward-oriented and merged.
fn enumerate_hyperplanes(
    coords: &[Vec<f64>],
    dim: usize,
    geo_tol: f64,
) -> Result<Vec<Hyperplane>> {
    let n = coords.len();
    let combinations = binomial(n, dim);
    if combinations > HULL_BUDGET {
        return Err(Error::TooLarge {
            n,
            d: dim,
            combinations,
            budget: HULL_BUDGET,
        });
    }

    let mut kept: Vec<Hyperplane> = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        if let Some((normal, offset)) = supporting_hyperplane(coords, &subset, dim, geo_tol) {
            let is_new = !kept.iter().any(|h| {
                (offset - h.offset).abs() <= geo_tol
                    && normal
                        .iter()
                        .zip(&h.normal)
                        .all(|(a, b)| (a - b).abs() <= NORMAL_MERGE)
            });
            if is_new {
                let indices: Vec<usize> = coords
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| (linalg::dot(&normal, p) - offset).abs() <= geo_tol)
                    .map(|(i, _)| i)
                    .collect();
                kept.push(Hyperplane {
                    normal,
                    offset,
                    indices,
                });
            }
        }
        if !advance_combination(&mut subset, n) {
            break;
        }
    }
    Ok(kept)
}

/// Hyperplane through the subset, oriented outward, if all points lie on one
/// side. `None` for affinely degenerate subsets and cutting hyperplanes.
fn supporting_hyperplane(
    coords: &[Vec<f64>],
    subset: &[usize],
    dim: usize,
    geo_tol: f64,
) -> Option<(Vec<f64>, f64)> {
    let base = &coords[subset[0]];
    let edges: Vec<Vec<f64>> = subset[1..]
        .iter()
        .map(|&i| linalg::sub(&coords[i], base))
        .collect();
    let normal = linalg::hyperplane_normal(&edges, dim, geo_tol)?;
    let offset = linalg::dot(&normal, base);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in coords {
        let v = linalg::dot(&normal, p) - offset;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi <= geo_tol {
        Some((normal, offset))
    } else if lo >= -geo_tol {
        Some((linalg::scale(&normal, -1.0), -offset))
    } else {
        None
    }
}

/// Triangulates one facet, returning simplices as global vertex indices.
/// Facet points are projected into hyperplane coordinates first.
fn facet_simplices(
    coords: &[Vec<f64>],
    facet_indices: &[usize],
    normal: &[f64],
    geo_tol: f64,
) -> Result<Vec<Vec<usize>>> {
    let dim = normal.len();
    let basis = hyperplane_basis(normal, dim);
    let base = &coords[facet_indices[0]];
    let projected: Vec<Vec<f64>> = facet_indices
        .iter()
        .map(|&i| {
            let rel = linalg::sub(&coords[i], base);
            basis.iter().map(|b| linalg::dot(b, &rel)).collect()
        })
        .collect();
    let local = triangulate_polytope(&projected, geo_tol)?;
    Ok(local
        .into_iter()
        .map(|tri| tri.into_iter().map(|i| facet_indices[i]).collect())
        .collect())
}

/// Triangulates the convex hull of full-dimensional `points` in ℝ^k into
/// k-simplices given as index tuples. Points interior to the hull are
/// ignored. Dimensions 1 and 2 are the recursion base; higher dimensions fan
/// from the lexicographically smallest point over the facets avoiding it.
pub(crate) fn triangulate_polytope(points: &[Vec<f64>], geo_tol: f64) -> Result<Vec<Vec<usize>>> {
    let k = points[0].len();
    match k {
        0 => Ok(vec![vec![0]]),
        1 => {
            let lo = (0..points.len())
                .min_by(|&i, &j| points[i][0].total_cmp(&points[j][0]))
                .unwrap();
            let hi = (0..points.len())
                .max_by(|&i, &j| points[i][0].total_cmp(&points[j][0]))
                .unwrap();
            Ok(vec![vec![lo, hi]])
        }
        2 => {
            let ring = convex_ring_2d(points);
            Ok((1..ring.len().saturating_sub(1))
                .map(|i| vec![ring[0], ring[i], ring[i + 1]])
                .collect())
        }
        _ => {
            let hyperplanes = enumerate_hyperplanes(points, k, geo_tol)?;
            let apex = (0..points.len())
                .min_by(|&i, &j| lex_cmp(&points[i], &points[j]))
                .unwrap();
            let mut simplices = Vec::new();
            for h in &hyperplanes {
                let apex_gap = (linalg::dot(&h.normal, &points[apex]) - h.offset).abs();
                if apex_gap <= geo_tol {
                    continue;
                }
                for sub in facet_simplices(points, &h.indices, &h.normal, geo_tol)? {
                    let mut s = Vec::with_capacity(k + 1);
                    s.push(apex);
                    s.extend(sub);
                    simplices.push(s);
                }
            }
            Ok(simplices)
        }
    }
}

/// Indices of the convex hull of 2-D points in counter-clockwise order
/// (monotone chain; collinear points dropped).
fn convex_ring_2d(points: &[Vec<f64>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| lex_cmp(&points[i], &points[j]));
    order.dedup_by(|&mut a, &mut b| points[a] == points[b]);
    if order.len() <= 2 {
        return order;
    }
    let cross = |o: usize, a: usize, b: usize| -> f64 {
        (points[a][0] - points[o][0]) * (points[b][1] - points[o][1])
            - (points[a][1] - points[o][1]) * (points[b][0] - points[o][0])
    };
    let mut lower: Vec<usize> = Vec::with_capacity(order.len());
    for &i in &order {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(order.len());
    for &i in order.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Orthonormal basis of the hyperplane orthogonal to the unit `normal`,
/// built by Gram–Schmidt over the coordinate axes.
fn hyperplane_basis(normal: &[f64], dim: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim - 1);
    for axis in 0..dim {
        if basis.len() == dim - 1 {
            break;
        }
        let mut v = vec![0.0; dim];
        v[axis] = 1.0;
        let vn = linalg::dot(&v, normal);
        for (x, n) in v.iter_mut().zip(normal) {
            *x -= vn * n;
        }
        for b in &basis {
            let vb = linalg::dot(&v, b);
            for (x, bc) in v.iter_mut().zip(b) {
                *x -= vb * bc;
            }
        }
        let len = linalg::norm(&v);
        if len > 1e-8 {
            basis.push(linalg::scale(&v, 1.0 / len));
        }
    }
    debug_assert_eq!(basis.len(), dim - 1);
    basis
}

fn affine_rank(coords: &[Vec<f64>], tol: f64) -> usize {
    let base = &coords[0];
    let rows: Vec<Vec<f64>> = coords[1..]
        .iter()
        .map(|p| linalg::sub(p, base))
        .collect();
    linalg::rank(&rows, tol)
}

pub(crate) fn diameter(coords: &[Vec<f64>]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..coords.len() {
        for j in 0..i {
            best = best.max(linalg::dist(&coords[i], &coords[j]));
        }
    }
    best
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut result: u128 = 1;
    for i in 0..k.min(n) {
        result = result.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if result > 10 * HULL_BUDGET {
            return result;
        }
    }
    result
}

fn advance_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
