//! Deterministic generators for the test-body zoo.
//!
//! The zoo spans the interesting regimes: centrally symmetric bodies (always
//! candidates, centroid at the symmetry center), tangent polytopes (every
//! facet touches an inscribed ball, realizing `h ≡ d|Ω|/|∂Ω|` at its center),
//! near-spherical bodies for the shell test, and oblong needles that the
//! certificate rightly refuses.
//!
//! There is no known construction of non-symmetric exact candidates, so
//! candidate bodies here rely on symmetry: either central symmetry or a
//! symmetry group with a unique fixed point. In particular the random
//! tangent polytopes use ±-paired normals, which makes them centrally
//! symmetric *and* tangent. Same spec (including seed) always yields
//! bit-identical vertices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_body, ConvexBody, Point};
use crate::linalg;

fn one() -> f64 {
    1.0
}

/// A recipe for a generated body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum BodySpec {
    /// `[−half_width, half_width]^dim`.
    Cube {
        dim: usize,
        #[serde(default = "one")]
        half_width: f64,
    },
    /// `[0, w_1] × … × [0, w_d]`.
    Box { widths: Vec<f64> },
    /// `scale · conv{0, e_1, …, e_d}`.
    Simplex {
        dim: usize,
        #[serde(default = "one")]
        scale: f64,
    },
    /// `conv{±scale·e_i}`.
    CrossPolytope {
        dim: usize,
        #[serde(default = "one")]
        scale: f64,
    },
    /// Regular n-gon in the plane with the given inradius, facets tangent to
    /// the inradius circle about the origin.
    RegularPolygon {
        sides: usize,
        #[serde(default = "one")]
        inradius: f64,
    },
    /// Intersection of `2·facet_pairs` halfspaces `±u_i·x ≤ inradius` for
    /// seeded random unit normals: every facet is tangent to the
    /// inradius-ball, and the ± pairing makes the body centrally symmetric.
    TangentPolytope {
        dim: usize,
        facet_pairs: usize,
        #[serde(default = "one")]
        inradius: f64,
        #[serde(default)]
        seed: u64,
    },
    /// `conv{±p_j}` for seeded random points on the unit sphere.
    RandomSymmetric {
        dim: usize,
        pairs: usize,
        #[serde(default)]
        seed: u64,
    },
    /// Icosahedron (level 0) or its once-subdivided refinement (level 1),
    /// radially projected to the sphere and rescaled to inradius 1. d = 3.
    SubdividedSphere {
        #[serde(default)]
        level: usize,
    },
    /// `[0, length] × [0,1]^{dim−1}`, the oblong regime.
    Needle { dim: usize, length: f64 },
}

/// Builds the body described by `spec`. Deterministic, including the seeded
/// kinds.
pub fn generate(spec: &BodySpec) -> Result<ConvexBody> {
    match spec {
        BodySpec::Cube { dim, half_width } => {
            require_dim(*dim)?;
            require_positive(*half_width, "half_width")?;
            if *dim == 6 {
                // 64 cube vertices exceed the hull budget in d = 6.
                return Err(Error::InvalidSpec(
                    "cube is limited to dim <= 5 by the hull budget".into(),
                ));
            }
            build_body(corner_points(&vec![*half_width * 2.0; *dim], -*half_width))
        }
        BodySpec::Box { widths } => {
            require_dim(widths.len())?;
            for w in widths {
                require_positive(*w, "width")?;
            }
            if widths.len() == 6 {
                return Err(Error::InvalidSpec(
                    "box is limited to dim <= 5 by the hull budget".into(),
                ));
            }
            build_body(corner_points(widths, 0.0))
        }
        BodySpec::Simplex { dim, scale } => {
            require_dim(*dim)?;
            require_positive(*scale, "scale")?;
            let mut verts = vec![Point::origin(*dim)];
            for i in 0..*dim {
                let mut c = vec![0.0; *dim];
                c[i] = *scale;
                verts.push(Point::new(c));
            }
            build_body(verts)
        }
        BodySpec::CrossPolytope { dim, scale } => {
            require_dim(*dim)?;
            require_positive(*scale, "scale")?;
            let mut verts = Vec::with_capacity(2 * dim);
            for i in 0..*dim {
                for sign in [1.0, -1.0] {
                    let mut c = vec![0.0; *dim];
                    c[i] = sign * *scale;
                    verts.push(Point::new(c));
                }
            }
            build_body(verts)
        }
        BodySpec::RegularPolygon { sides, inradius } => {
            if *sides < 3 || *sides > 64 {
                return Err(Error::InvalidSpec(format!(
                    "regular polygon needs 3..=64 sides, got {sides}"
                )));
            }
            require_positive(*inradius, "inradius")?;
            let circumradius = inradius / (std::f64::consts::PI / *sides as f64).cos();
            let verts: Vec<Point> = (0..*sides)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / *sides as f64;
                    Point::new(vec![circumradius * theta.cos(), circumradius * theta.sin()])
                })
                .collect();
            build_body(verts)
        }
        BodySpec::TangentPolytope {
            dim,
            facet_pairs,
            inradius,
            seed,
        } => {
            require_dim(*dim)?;
            require_positive(*inradius, "inradius")?;
            if *facet_pairs < *dim || *facet_pairs > 16 {
                return Err(Error::InvalidSpec(format!(
                    "tangent polytope needs dim..=16 facet pairs, got {facet_pairs}"
                )));
            }
            tangent_polytope(*dim, *facet_pairs, *inradius, *seed)
        }
        BodySpec::RandomSymmetric { dim, pairs, seed } => {
            require_dim(*dim)?;
            if *pairs < *dim || 2 * *pairs > crate::tolerances::MAX_VERTICES {
                return Err(Error::InvalidSpec(format!(
                    "random symmetric body needs dim..=32 pairs, got {pairs}"
                )));
            }
            random_symmetric(*dim, *pairs, *seed)
        }
        BodySpec::SubdividedSphere { level } => {
            if *level > 1 {
                return Err(Error::InvalidSpec(
                    "subdivision level is limited to 0 or 1 by the vertex budget".into(),
                ));
            }
            subdivided_sphere(*level)
        }
        BodySpec::Needle { dim, length } => {
            require_dim(*dim)?;
            require_positive(*length, "length")?;
            let mut widths = vec![1.0; *dim];
            widths[0] = *length;
            generate(&BodySpec::Box { widths })
        }
    }
}

/// Whether the vertex set is invariant under reflection through the body
/// centroid. Central symmetry forces both centroids onto the symmetry
/// center, so symmetric bodies are always candidates.
pub fn is_centrally_symmetric(body: &ConvexBody) -> bool {
    let center = body.body_centroid();
    let tol = body.geo_tol();
    body.vertices().iter().all(|v| {
        let mirrored = center.scale(2.0).sub(v);
        body.vertices().iter().any(|u| u.dist(&mirrored) <= tol)
    })
}

fn require_dim(dim: usize) -> Result<()> {
    if (2..=6).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

fn require_positive(value: f64, name: &str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{name} must be positive, got {value}")))
    }
}

/// Corners of `[offset, offset+w_1] × … × [offset, offset+w_d]`.
fn corner_points(widths: &[f64], offset: f64) -> Vec<Point> {
    let d = widths.len();
    (0..1usize << d)
        .map(|mask| {
            Point::new(
                (0..d)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            offset + widths[i]
                        } else {
                            offset
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

fn unit_sphere_point<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let n = linalg::norm(&v);
        if n > 1e-6 {
            return linalg::scale(&v, 1.0 / n);
        }
    }
}

fn random_symmetric(dim: usize, pairs: usize, seed: u64) -> Result<ConvexBody> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..64 {
        let points: Vec<Vec<f64>> = (0..pairs).map(|_| unit_sphere_point(dim, &mut rng)).collect();
        // Need a full-dimensional, well-separated antipodal cloud.
        if linalg::rank(&points, 1e-6) < dim {
            continue;
        }
        let mut verts: Vec<Point> = Vec::with_capacity(2 * pairs);
        for p in &points {
            verts.push(Point::new(p.clone()));
            verts.push(Point::new(linalg::scale(p, -1.0)));
        }
        for i in 0..verts.len() {
            for j in 0..i {
                if verts[i].dist(&verts[j]) <= 1e-6 {
                    continue 'attempt;
                }
            }
        }
        if let Ok(body) = build_body(verts) {
            return Ok(body);
        }
    }
    Err(Error::InvalidSpec(format!(
        "random symmetric generator failed to find a valid cloud (dim {dim}, pairs {pairs}, seed {seed})"
    )))
}

fn tangent_polytope(dim: usize, facet_pairs: usize, inradius: f64, seed: u64) -> Result<ConvexBody> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let axes: Vec<Vec<f64>> = (0..facet_pairs)
            .map(|_| unit_sphere_point(dim, &mut rng))
            .collect();
        if linalg::rank(&axes, 1e-6) < dim {
            continue;
        }
        // ± pairing: bounded (the axes span) and centrally symmetric.
        let mut normals: Vec<Vec<f64>> = Vec::with_capacity(2 * facet_pairs);
        for u in &axes {
            normals.push(u.clone());
            normals.push(linalg::scale(u, -1.0));
        }
        match halfspace_vertices(&normals, inradius) {
            Ok(verts) if verts.len() >= dim + 1 && verts.len() <= crate::tolerances::MAX_VERTICES => {
                if let Ok(body) = build_body(verts) {
                    return Ok(body);
                }
            }
            _ => {}
        }
    }
    Err(Error::InvalidSpec(format!(
        "tangent polytope generator failed (dim {dim}, pairs {facet_pairs}, seed {seed})"
    )))
}

/// Vertices of `{x : n_j·x ≤ r}` by brute-force enumeration of d-subsets.
fn halfspace_vertices(normals: &[Vec<f64>], r: f64) -> Result<Vec<Point>> {
    let dim = normals[0].len();
    let m = normals.len();
    let mut verts: Vec<Vec<f64>> = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let rows: Vec<Vec<f64>> = subset.iter().map(|&j| normals[j].clone()).collect();
        if let Some(x) = linalg::solve(&rows, &vec![r; dim], 1e-8) {
            let scale = 1.0 + linalg::norm(&x);
            let feasible = normals
                .iter()
                .all(|n| linalg::dot(n, &x) <= r + 1e-9 * scale);
            if feasible && !verts.iter().any(|v| linalg::dist(v, &x) <= 1e-8 * scale) {
                verts.push(x);
            }
        }
        if !advance(&mut subset, m) {
            break;
        }
    }
    Ok(verts.into_iter().map(Point::new).collect())
}

fn advance(subset: &mut [usize], n: usize) -> bool {
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

fn subdivided_sphere(level: usize) -> Result<ConvexBody> {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut verts: Vec<Vec<f64>> = Vec::new();
    for &(a, b) in &[(1.0, phi), (-1.0, phi), (1.0, -phi), (-1.0, -phi)] {
        verts.push(vec![0.0, a, b]);
        verts.push(vec![a, b, 0.0]);
        verts.push(vec![b, 0.0, a]);
    }
    for v in &mut verts {
        let n = linalg::norm(v);
        *v = linalg::scale(v, 1.0 / n);
    }

    if level == 1 {
        let base = build_body(verts.iter().cloned().map(Point::new).collect())?;
        let mut midpoints: Vec<Vec<f64>> = Vec::new();
        for facet in base.facets() {
            let idx = facet.vertex_indices();
            for i in 0..idx.len() {
                for j in 0..i {
                    let a = base.vertices()[idx[i]].coords();
                    let b = base.vertices()[idx[j]].coords();
                    let mut mid: Vec<f64> =
                        a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
                    let n = linalg::norm(&mid);
                    mid = linalg::scale(&mid, 1.0 / n);
                    if !midpoints
                        .iter()
                        .chain(verts.iter())
                        .any(|v| linalg::dist(v, &mid) <= 1e-9)
                    {
                        midpoints.push(mid);
                    }
                }
            }
        }
        verts.extend(midpoints);
    }

    let unit = build_body(verts.iter().cloned().map(Point::new).collect())?;
    let inradius = unit
        .facets()
        .iter()
        .map(|f| f.offset())
        .fold(f64::INFINITY, f64::min);
    build_body(
        unit.vertices()
            .iter()
            .map(|v| v.scale(1.0 / inradius))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certify, chebyshev_center, h_max};
    use approx::assert_relative_eq;

    #[test]
    fn cube_counts_and_volume() {
        let b = generate(&BodySpec::Cube {
            dim: 3,
            half_width: 1.0,
        })
        .unwrap();
        assert_eq!(b.vertices().len(), 8);
        assert_eq!(b.facets().len(), 6);
        assert_relative_eq!(b.volume(), 8.0, epsilon = 1e-12);
    }

    #[test]
    fn cross_polytope_counts_and_volume() {
        let b = generate(&BodySpec::CrossPolytope { dim: 3, scale: 1.0 }).unwrap();
        assert_eq!(b.vertices().len(), 6);
        assert_eq!(b.facets().len(), 8);
        assert_relative_eq!(b.volume(), 4.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn hexagon_closed_forms() {
        let b = generate(&BodySpec::RegularPolygon {
            sides: 6,
            inradius: 1.0,
        })
        .unwrap();
        assert_relative_eq!(b.volume(), 2.0 * 3.0f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(b.surface_area(), 4.0 * 3.0f64.sqrt(), epsilon = 1e-12);
        for v in b.vertices() {
            assert_relative_eq!(v.norm(), 2.0 / 3.0f64.sqrt(), epsilon = 1e-12);
        }
        let origin = Point::origin(2);
        for f in b.facets() {
            assert_relative_eq!(f.clearance(&origin), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn symmetry_detection() {
        let cube = generate(&BodySpec::Cube {
            dim: 2,
            half_width: 1.0,
        })
        .unwrap();
        assert!(is_centrally_symmetric(&cube));

        let simplex = generate(&BodySpec::Simplex { dim: 3, scale: 1.0 }).unwrap();
        assert!(!is_centrally_symmetric(&simplex));
    }

    #[test]
    fn random_symmetric_bodies_are_symmetric_candidates() {
        for seed in 0..8 {
            let b = generate(&BodySpec::RandomSymmetric {
                dim: 3,
                pairs: 8,
                seed,
            })
            .unwrap();
            assert!(is_centrally_symmetric(&b), "seed {seed}");
            let gap = b.body_centroid().dist(b.boundary_centroid()) / b.diameter();
            assert!(gap <= 1e-9, "seed {seed}: gap {gap}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let spec = BodySpec::TangentPolytope {
            dim: 3,
            facet_pairs: 6,
            inradius: 1.0,
            seed: 11,
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a.vertices().len(), b.vertices().len());
        for (x, y) in a.vertices().iter().zip(b.vertices()) {
            assert_eq!(x.coords(), y.coords());
        }
    }

    #[test]
    fn tangent_polytope_identity() {
        for seed in 0..6 {
            let b = generate(&BodySpec::TangentPolytope {
                dim: 3,
                facet_pairs: 7,
                inradius: 1.0,
                seed,
            })
            .unwrap();
            assert!(is_centrally_symmetric(&b), "seed {seed}");
            let (center, radius) = chebyshev_center(&b).unwrap();
            assert_relative_eq!(radius, 1.0, max_relative = 1e-8);
            let h = h_max(&b, &center).unwrap();
            let identity = b.dim() as f64 * b.volume() / b.surface_area();
            assert_relative_eq!(h, identity, max_relative = 1e-8);
            let report = certify(&b).unwrap();
            assert!(report.certified && report.strict, "seed {seed}");
            assert!(report.tangent_identity_holds, "seed {seed}");
        }
    }

    #[test]
    fn needle_is_not_certified() {
        let b = generate(&BodySpec::Needle {
            dim: 3,
            length: 30.0,
        })
        .unwrap();
        let report = certify(&b).unwrap();
        assert!(report.is_candidate);
        assert!(!report.certified);
        assert!(report.h_max / report.bound > 1.0);
    }

    #[test]
    fn subdivided_sphere_counts() {
        let icosa = generate(&BodySpec::SubdividedSphere { level: 0 }).unwrap();
        assert_eq!(icosa.vertices().len(), 12);
        assert_eq!(icosa.facets().len(), 20);
        let refined = generate(&BodySpec::SubdividedSphere { level: 1 }).unwrap();
        assert_eq!(refined.vertices().len(), 42);
        assert_eq!(refined.facets().len(), 80);
        // Rescaled to inradius 1.
        for b in [&icosa, &refined] {
            let inradius = b
                .facets()
                .iter()
                .map(|f| f.offset())
                .fold(f64::INFINITY, f64::min);
            assert_relative_eq!(inradius, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(generate(&BodySpec::Cube {
            dim: 7,
            half_width: 1.0
        })
        .is_err());
        assert!(generate(&BodySpec::Cube {
            dim: 6,
            half_width: 1.0
        })
        .is_err());
        assert!(generate(&BodySpec::RegularPolygon {
            sides: 2,
            inradius: 1.0
        })
        .is_err());
        assert!(generate(&BodySpec::Needle {
            dim: 3,
            length: -5.0
        })
        .is_err());
        assert!(generate(&BodySpec::SubdividedSphere { level: 2 }).is_err());
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = BodySpec::TangentPolytope {
            dim: 4,
            facet_pairs: 6,
            inradius: 2.0,
            seed: 3,
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"kind\":\"tangent-polytope\""));
        let back: BodySpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
    }
}
