//! Cross-module properties checked against independent oracles.
//!
//! The oracles here (monotone-chain hull + shoelace in 2-D, all-subsets
//! one-sidedness in 3-D, gauge-based radial fractions) are written from
//! scratch in test code and share no path with the implementations they
//! check.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jensen_core::bodies::{self, BodySpec};
use jensen_core::convex_fn::battery;
use jensen_core::geometry::{build_body, triangulate_facet, ConvexBody, Point};
use jensen_core::{
    candidate_check, certify, h_max, integrate_body, integrate_body_monte_carlo,
    integrate_boundary, integrate_boundary_monte_carlo, lemma_check, optimal_translate,
    shell_certify, McConfig, RadialSampler,
};

// ---------------------------------------------------------------------------
// Independent 2-D oracles
// ---------------------------------------------------------------------------

/// Convex hull of 2-D points, counter-clockwise, by a from-scratch monotone
/// chain over coordinate pairs.
fn hull_2d_oracle(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut sorted: Vec<(f64, f64)> = points.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup();
    if sorted.len() <= 2 {
        return sorted;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &sorted {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in sorted.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn shoelace(ring: &[(f64, f64)]) -> f64 {
    let n = ring.len();
    let mut twice = 0.0;
    for i in 0..n {
        let (x0, y0) = ring[i];
        let (x1, y1) = ring[(i + 1) % n];
        twice += x0 * y1 - x1 * y0;
    }
    twice.abs() / 2.0
}

fn perimeter(ring: &[(f64, f64)]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let (x0, y0) = ring[i];
            let (x1, y1) = ring[(i + 1) % n];
            ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// build_body agrees with the shoelace formula and edge-length perimeter
    /// on random 2-D hulls.
    #[test]
    fn shoelace_and_perimeter_oracle(
        raw in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 4..14)
    ) {
        let ring = hull_2d_oracle(&raw);
        prop_assume!(ring.len() >= 3);
        let area = shoelace(&ring);
        prop_assume!(area > 0.5); // stay away from sliver tolerance questions
        let body = build_body(ring.iter().map(|&(x, y)| Point::new(vec![x, y])).collect())
            .expect("oracle hull vertices are extreme");
        prop_assert!((body.volume() - area).abs() <= 1e-12 * area.max(1.0));
        let perim = perimeter(&ring);
        prop_assert!((body.surface_area() - perim).abs() <= 1e-12 * perim);
        prop_assert_eq!(body.facets().len(), ring.len());
    }

    /// Rebuilding a translated vertex list shifts centroids by exactly the
    /// translation and leaves every measure unchanged.
    #[test]
    fn translation_equivariance(
        raw in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 4..10),
        shift in (-100.0..100.0f64, -100.0..100.0f64)
    ) {
        let ring = hull_2d_oracle(&raw);
        prop_assume!(ring.len() >= 3);
        prop_assume!(shoelace(&ring) > 0.5);
        let base = build_body(ring.iter().map(|&(x, y)| Point::new(vec![x, y])).collect()).unwrap();
        let moved = build_body(
            ring.iter()
                .map(|&(x, y)| Point::new(vec![x + shift.0, y + shift.1]))
                .collect(),
        )
        .unwrap();
        let scale = base.diameter();
        prop_assert!((base.volume() - moved.volume()).abs() <= 1e-10 * scale * scale);
        prop_assert!((base.surface_area() - moved.surface_area()).abs() <= 1e-10 * scale);
        let c0 = base.body_centroid();
        let c1 = moved.body_centroid();
        prop_assert!((c1[0] - c0[0] - shift.0).abs() <= 1e-10 * scale.max(shift.0.abs()));
        prop_assert!((c1[1] - c0[1] - shift.1).abs() <= 1e-10 * scale.max(shift.1.abs()));
        let b0 = base.boundary_centroid();
        let b1 = moved.boundary_centroid();
        prop_assert!((b1[0] - b0[0] - shift.0).abs() <= 1e-9 * scale.max(shift.0.abs()));
        prop_assert!((b1[1] - b0[1] - shift.1).abs() <= 1e-9 * scale.max(shift.1.abs()));
    }
}

// ---------------------------------------------------------------------------
// 3-D hull against the all-subsets oracle
// ---------------------------------------------------------------------------

/// Brute-force supporting-plane oracle: every 3-subset of the points, kept
/// when all points are on one side. Returns outward (normal, offset) pairs,
/// deduplicated.
fn supporting_planes_oracle(points: &[[f64; 3]]) -> Vec<([f64; 3], f64)> {
    let n = points.len();
    let mut planes: Vec<([f64; 3], f64)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (a, b, c) = (points[i], points[j], points[k]);
                let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
                let mut normal = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                let len = (normal[0].powi(2) + normal[1].powi(2) + normal[2].powi(2)).sqrt();
                if len < 1e-12 {
                    continue;
                }
                for x in &mut normal {
                    *x /= len;
                }
                let offset = normal[0] * a[0] + normal[1] * a[1] + normal[2] * a[2];
                let heights: Vec<f64> = points
                    .iter()
                    .map(|p| normal[0] * p[0] + normal[1] * p[1] + normal[2] * p[2] - offset)
                    .collect();
                let tol = 1e-9 * 2.0; // diameter of unit-sphere points ≤ 2
                let (normal, offset) = if heights.iter().all(|&h| h <= tol) {
                    (normal, offset)
                } else if heights.iter().all(|&h| h >= -tol) {
                    ([-normal[0], -normal[1], -normal[2]], -offset)
                } else {
                    continue;
                };
                if !planes.iter().any(|(pn, po)| {
                    (po - offset).abs() <= 1e-9
                        && pn.iter().zip(&normal).all(|(x, y)| (x - y).abs() <= 1e-9)
                }) {
                    planes.push((normal, offset));
                }
            }
        }
    }
    planes
}

#[test]
fn random_sphere_hulls_match_subset_oracle() {
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let points: Vec<[f64; 3]> = (0..8)
            .map(|_| {
                loop {
                    let v: [f64; 3] = [
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    ];
                    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                    if n > 0.2 {
                        break [v[0] / n, v[1] / n, v[2] / n];
                    }
                }
            })
            .collect();
        let planes = supporting_planes_oracle(&points);
        let body = build_body(points.iter().map(|p| Point::new(p.to_vec())).collect())
            .expect("points on a sphere are extreme");
        assert_eq!(
            body.facets().len(),
            planes.len(),
            "seed {seed}: facet count vs oracle"
        );
        for f in body.facets() {
            let matched = planes.iter().any(|(pn, po)| {
                (po - f.offset()).abs() <= 1e-9
                    && pn.iter().zip(f.normal()).all(|(x, y)| (x - y).abs() <= 1e-9)
            });
            assert!(matched, "seed {seed}: facet not found in oracle");
        }
    }
}

// ---------------------------------------------------------------------------
// Shared roster of generated bodies
// ---------------------------------------------------------------------------

fn roster() -> Vec<(String, ConvexBody)> {
    let specs: Vec<(&str, BodySpec)> = vec![
        ("square", BodySpec::Cube { dim: 2, half_width: 1.0 }),
        ("pentagon", BodySpec::RegularPolygon { sides: 5, inradius: 1.0 }),
        ("random-sym-2d", BodySpec::RandomSymmetric { dim: 2, pairs: 7, seed: 4 }),
        ("cube-3d", BodySpec::Cube { dim: 3, half_width: 1.0 }),
        ("octahedron", BodySpec::CrossPolytope { dim: 3, scale: 1.0 }),
        ("tangent-3d", BodySpec::TangentPolytope { dim: 3, facet_pairs: 6, inradius: 1.0, seed: 2 }),
        ("random-sym-3d", BodySpec::RandomSymmetric { dim: 3, pairs: 9, seed: 8 }),
        ("icosahedron", BodySpec::SubdividedSphere { level: 0 }),
        ("simplex-3d", BodySpec::Simplex { dim: 3, scale: 2.0 }),
        ("cross-4d", BodySpec::CrossPolytope { dim: 4, scale: 1.0 }),
        ("random-sym-4d", BodySpec::RandomSymmetric { dim: 4, pairs: 8, seed: 21 }),
    ];
    specs
        .into_iter()
        .map(|(name, spec)| (name.to_string(), bodies::generate(&spec).unwrap()))
        .collect()
}

fn interior_points(body: &ConvexBody, count: usize, seed: u64) -> Vec<Point> {
    let sampler = RadialSampler::new(body, body.body_centroid()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![body.body_centroid().clone()];
    while out.len() < count {
        // Contract toward the centroid so points stay strictly interior.
        let p = sampler.sample(&mut rng);
        let pulled = body
            .body_centroid()
            .add(&p.sub(body.body_centroid()).scale(0.95));
        if body.require_interior(&pulled).is_ok() {
            out.push(pulled);
        }
    }
    out
}

/// Facet triangulations partition the facet measure.
#[test]
fn facet_measure_additivity() {
    for (name, body) in roster() {
        for facet in body.facets() {
            let total: f64 = triangulate_facet(facet, &body)
                .iter()
                .map(|s| s.measure())
                .sum();
            assert!(
                (total - facet.measure()).abs() <= 1e-10 * facet.measure(),
                "{name}: {total} vs {}",
                facet.measure()
            );
        }
    }
}

/// Σ_facets dist(p, facet)·measure/d = volume for every interior p.
#[test]
fn cone_volume_identity_any_origin() {
    for (name, body) in roster() {
        for p in interior_points(&body, 8, 77) {
            let recon: f64 = body
                .facets()
                .iter()
                .map(|f| f.clearance(&p) * f.measure() / body.dim() as f64)
                .sum();
            assert!(
                (recon - body.volume()).abs() <= 1e-9 * body.volume(),
                "{name}: cone identity off by {:.3e}",
                (recon - body.volume()).abs() / body.volume()
            );
        }
    }
}

/// h_max at any interior origin dominates d·V/S, the measure-weighted mean
/// of the cone distances.
#[test]
fn h_max_dominates_cone_mean() {
    for (name, body) in roster() {
        let mean = body.dim() as f64 * body.volume() / body.surface_area();
        for p in interior_points(&body, 12, 123) {
            let h = h_max(&body, &p).unwrap();
            assert!(h >= mean - 1e-10 * mean, "{name}: h {h} < mean {mean}");
        }
    }
}

/// The optimal translate is optimal: no sampled interior point beats it, and
/// at least d+1 constraints are active at the LP vertex.
#[test]
fn optimal_translate_beats_sampled_origins() {
    for (name, body) in roster() {
        let (c_star, h_star) = optimal_translate(&body).unwrap();
        for p in interior_points(&body, 100, 99) {
            let h = h_max(&body, &p).unwrap();
            assert!(
                h_star <= h + 1e-9 * h_star.max(1.0),
                "{name}: sampled origin beats LP ({h} < {h_star})"
            );
        }
        let active = body
            .facets()
            .iter()
            .filter(|f| (f.clearance(&c_star) - h_star).abs() <= 1e-7 * h_star.max(1.0))
            .count();
        assert!(
            active >= body.dim() + 1,
            "{name}: only {active} active constraints at the optimum"
        );
    }
}

/// Shell certification implies full certification for candidates.
#[test]
fn shell_pass_implies_certified() {
    for (name, body) in roster() {
        let Ok(shell) = shell_certify(&body) else {
            continue; // origin not interior (shifted bodies)
        };
        let (is_candidate, _) = candidate_check(&body, 1e-7);
        if shell.pass && is_candidate {
            let report = certify(&body).unwrap();
            assert!(report.certified, "{name}: shell pass but not certified");
        }
    }
}

// ---------------------------------------------------------------------------
// Integration properties
// ---------------------------------------------------------------------------

/// Forced Monte Carlo agrees with the exact rules within 4 standard errors.
#[test]
fn exact_vs_monte_carlo_on_roster() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (i, (name, body)) in roster().into_iter().enumerate() {
        let d = body.dim();
        let fns = [
            battery::random_affine(d, &mut rng),
            battery::random_quadratic(d, &mut rng),
        ];
        for (j, f) in fns.iter().enumerate() {
            let mc = McConfig::new(40_000, 600 + (i * 2 + j) as u64);
            let exact = integrate_body(&body, f, &mc).unwrap();
            let sampled = integrate_body_monte_carlo(&body, f, &mc).unwrap();
            assert!(
                (exact.value - sampled.value).abs() <= 4.0 * sampled.stderr,
                "{name} fn {j} body: exact {} vs mc {} ± {}",
                exact.value,
                sampled.value,
                sampled.stderr
            );
            let exact_b = integrate_boundary(&body, f, &mc).unwrap();
            let sampled_b = integrate_boundary_monte_carlo(&body, f, &mc).unwrap();
            assert!(
                (exact_b.value - sampled_b.value).abs() <= 4.0 * sampled_b.stderr,
                "{name} fn {j} boundary"
            );
        }
    }
}

/// f̃ = f − g is nonnegative on the body and vanishes at the support point.
#[test]
fn supporting_subtraction_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(555);
    for (name, body) in roster() {
        let d = body.dim();
        let sampler = RadialSampler::new(&body, body.body_centroid()).unwrap();
        for k in 0..6 {
            let f = match k % 3 {
                0 => battery::random_affine(d, &mut rng),
                1 => battery::random_max_affine(d, 8, &mut rng),
                _ => battery::random_quadratic(d, &mut rng),
            };
            let origin = body.body_centroid();
            let g = f.supporting_affine_at(origin).unwrap();
            let tilde = f.subtract_affine(&g);
            let at_origin = tilde.eval(origin).unwrap();
            assert!(
                at_origin.abs() <= 1e-12,
                "{name}: f̃(origin) = {at_origin}"
            );
            for _ in 0..1000 {
                let p = sampler.sample(&mut rng);
                let fv = f.eval(&p).unwrap();
                let tv = tilde.eval(&p).unwrap();
                assert!(
                    tv >= -1e-12 * (1.0 + fv.abs()),
                    "{name}: f̃ negative ({tv}) at {p:?}"
                );
            }
        }
    }
}

/// The cone-coordinate bound holds for every body, function family, and
/// origin, including origins far from optimal.
#[test]
fn lemma_bound_across_origins() {
    let mut rng = ChaCha8Rng::seed_from_u64(9999);
    for (name, body) in roster() {
        let d = body.dim();
        let origins = interior_points(&body, 3, 31);
        for (i, origin) in origins.iter().enumerate() {
            for k in 0..6 {
                let f = match k % 3 {
                    0 => battery::random_affine(d, &mut rng),
                    1 => battery::random_max_affine(d, 8, &mut rng),
                    _ => battery::random_quadratic(d, &mut rng),
                };
                let mc = McConfig::new(20_000, 7000 + (i * 6 + k) as u64);
                let check = lemma_check(&body, &f, origin, &mc).unwrap();
                assert!(
                    check.holds,
                    "{name} origin {i} fn {k}: {:.6e} > {:.6e} + 3·{:.2e}",
                    check.body_side,
                    check.boundary_side,
                    check.stderr
                );
            }
        }
    }
}

/// Radial fractions recovered through the gauge oracle follow the t^d law.
#[test]
fn radial_fraction_distribution() {
    let body = bodies::generate(&BodySpec::CrossPolytope { dim: 3, scale: 1.0 }).unwrap();
    let origin = Point::new(vec![0.1, -0.05, 0.2]);
    let sampler = RadialSampler::new(&body, &origin).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31415);
    let n = 20_000usize;
    let mut fractions: Vec<f64> = (0..n)
        .map(|_| {
            let p = sampler.sample(&mut rng);
            // Gauge of p − origin in the translated body: the radial
            // fraction is max_i (n_i·(p−o)) / (offset_i − n_i·o).
            body.facets()
                .iter()
                .map(|f| {
                    let num: f64 = f
                        .normal()
                        .iter()
                        .zip(p.sub(&origin).coords())
                        .map(|(a, b)| a * b)
                        .sum();
                    num / f.clearance(&origin)
                })
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    fractions.sort_by(f64::total_cmp);
    let mut ks = 0.0f64;
    for (i, t) in fractions.iter().enumerate() {
        let cdf = t.powi(3).clamp(0.0, 1.0);
        ks = ks.max((cdf - i as f64 / n as f64).abs());
        ks = ks.max((cdf - (i + 1) as f64 / n as f64).abs());
    }
    // 1% Kolmogorov–Smirnov critical value 1.628/√n.
    let critical = 1.62762 / (n as f64).sqrt();
    assert!(ks <= critical, "KS {ks} > {critical}");
}
