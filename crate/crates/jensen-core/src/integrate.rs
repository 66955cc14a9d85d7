//! Integration of convex test functions over bodies and boundaries.
//!
//! Affine and quadratic functions integrate exactly: affine by evaluating at
//! simplex centroids, quadratic by the degree-2 simplex rule
//! `∫_Δ x xᵀ = μ(Δ)/((k+1)(k+2)) · (Σᵢ vᵢvᵢᵀ + (Σᵢvᵢ)(Σᵢvᵢ)ᵀ)`.
//! Max-of-affine functions are integrated by seeded Monte Carlo — exact
//! hyperplane-arrangement subdivision would be an order of magnitude more
//! code for no gain the error bars don't already give.
//!
//! Body samples come from cone coordinates: a boundary simplex is chosen
//! with probability proportional to its cone volume (cone distance times
//! simplex measure), a point `x` uniform in the simplex, and a radial
//! fraction `t = U^{1/d}`, matching the volume element
//! `t^{d−1}·h·dσ·dt`.
//!
//! Randomness is reproducible regardless of batching: a 64-bit seed plus a
//! counter-style stream index select an independent ChaCha stream per task.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certify::h_max;
use crate::convex_fn::ConvexFunction;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point, Simplex};
use crate::linalg;

/// How an integral was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Exact simplex quadrature; `stderr` is zero.
    ExactSimplex,
    /// Seeded Monte Carlo; `stderr` is the standard error of the estimate.
    MonteCarlo,
}

/// An integral value with its error bound.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub stderr: f64,
    pub method: Method,
    pub samples: u64,
}

impl IntegralEstimate {
    fn exact(value: f64) -> Self {
        IntegralEstimate {
            value,
            stderr: 0.0,
            method: Method::ExactSimplex,
            samples: 0,
        }
    }
}

/// Monte Carlo budget and stream selection.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Stream index; operations that need two streams (body and boundary)
    /// use `stream` and `stream + 1`, so batch callers should space
    /// consecutive tasks by two.
    pub stream: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            samples: 100_000,
            seed: 0,
            stream: 0,
        }
    }
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig {
            samples,
            seed,
            stream: 0,
        }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        McConfig { stream, ..self }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// `∫_Ω f dV`, unnormalized. Exact for affine and quadratic `f`, Monte Carlo
/// with `mc.samples` points for max-affine.
pub fn integrate_body(body: &ConvexBody, f: &ConvexFunction, mc: &McConfig) -> Result<IntegralEstimate> {
    f.check_dim(body.dim())?;
    match f {
        ConvexFunction::Affine(_) | ConvexFunction::Quadratic { .. } => {
            let simplices = body.body_simplices(body.body_centroid());
            Ok(IntegralEstimate::exact(exact_over_simplices(&simplices, f)))
        }
        ConvexFunction::MaxAffine(_) => integrate_body_monte_carlo(body, f, mc),
    }
}

/// `∫_∂Ω f dσ`, unnormalized, by the same method split over the facet
/// (d−1)-simplices.
pub fn integrate_boundary(
    body: &ConvexBody,
    f: &ConvexFunction,
    mc: &McConfig,
) -> Result<IntegralEstimate> {
    f.check_dim(body.dim())?;
    match f {
        ConvexFunction::Affine(_) | ConvexFunction::Quadratic { .. } => {
            let simplices: Vec<Simplex> = body
                .boundary_simplices()
                .into_iter()
                .map(|(_, s)| s)
                .collect();
            Ok(IntegralEstimate::exact(exact_over_simplices(&simplices, f)))
        }
        ConvexFunction::MaxAffine(_) => integrate_boundary_monte_carlo(body, f, mc),
    }
}

/// Monte Carlo body integral for any function family (exact families accept
/// it too, which is how the exact path is cross-checked).
pub fn integrate_body_monte_carlo(
    body: &ConvexBody,
    f: &ConvexFunction,
    mc: &McConfig,
) -> Result<IntegralEstimate> {
    f.check_dim(body.dim())?;
    let sampler = RadialSampler::new(body, body.body_centroid())?;
    let mut rng = mc.rng();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..mc.samples {
        let v = f.eval_unchecked(&sampler.sample(&mut rng));
        sum += v;
        sum_sq += v * v;
    }
    Ok(finish_mc(body.volume(), sum, sum_sq, mc.samples))
}

/// Monte Carlo boundary integral: simplices chosen with probability
/// proportional to surface measure, points uniform per simplex.
pub fn integrate_boundary_monte_carlo(
    body: &ConvexBody,
    f: &ConvexFunction,
    mc: &McConfig,
) -> Result<IntegralEstimate> {
    f.check_dim(body.dim())?;
    let simplices: Vec<Simplex> = body
        .boundary_simplices()
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    let cumulative = cumulative_weights(simplices.iter().map(Simplex::measure));
    let total = *cumulative.last().expect("body has facets");
    let mut rng = mc.rng();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..mc.samples {
        let s = &simplices[pick_weighted(&cumulative, &mut rng)];
        let v = f.eval_unchecked(&sample_in_simplex(s, &mut rng));
        sum += v;
        sum_sq += v * v;
    }
    debug_assert!((total - body.surface_area()).abs() <= 1e-9 * body.surface_area());
    Ok(finish_mc(body.surface_area(), sum, sum_sq, mc.samples))
}

/// Boundary average minus body average of `f`, with combined standard error.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GapEstimate {
    pub gap: f64,
    pub stderr: f64,
}

/// The Hermite–Hadamard-style gap
/// `(1/|∂Ω|)∫_∂Ω f dσ − (1/|Ω|)∫_Ω f dV`.
///
/// Nonnegative (within sampling error) on certified bodies; zero for affine
/// `f` on candidate bodies. Uses streams `mc.stream` (body) and
/// `mc.stream + 1` (boundary).
pub fn hh_gap(body: &ConvexBody, f: &ConvexFunction, mc: &McConfig) -> Result<GapEstimate> {
    let body_est = integrate_body(body, f, mc)?;
    let boundary_est = integrate_boundary(body, f, &mc.with_stream(mc.stream + 1))?;
    let gap = boundary_est.value / body.surface_area() - body_est.value / body.volume();
    let stderr = ((boundary_est.stderr / body.surface_area()).powi(2)
        + (body_est.stderr / body.volume()).powi(2))
    .sqrt();
    Ok(GapEstimate { gap, stderr })
}

/// Outcome of the cone-coordinate bound check at an interior origin.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LemmaCheck {
    /// `body_side ≤ boundary_side + 3·stderr`.
    pub holds: bool,
    /// `∫_Ω f̃ dV` for `f̃ = f − g`, `g` supporting at the origin.
    pub body_side: f64,
    /// `(h_max/(d+1)) ∫_∂Ω f̃ dσ`.
    pub boundary_side: f64,
    /// Combined standard error of the two sides.
    pub stderr: f64,
}

/// Verifies `∫_Ω f̃ dV ≤ (h_max(Ω,origin)/(d+1)) ∫_∂Ω f̃ dσ` where
/// `f̃ = f − g` and `g` is the supporting affine of `f` at `origin`, so that
/// `f̃` is nonnegative convex and vanishes there. Must hold for every convex
/// `f` and strictly interior origin.
pub fn lemma_check(
    body: &ConvexBody,
    f: &ConvexFunction,
    origin: &Point,
    mc: &McConfig,
) -> Result<LemmaCheck> {
    f.check_dim(body.dim())?;
    let h = h_max(body, origin)?;
    let g = f.supporting_affine_at(origin)?;
    let tilde = f.subtract_affine(&g);
    let body_est = integrate_body(body, &tilde, mc)?;
    let coefficient = h / (body.dim() as f64 + 1.0);
    let boundary_est = integrate_boundary(body, &tilde, &mc.with_stream(mc.stream + 1))?;
    let stderr =
        (body_est.stderr.powi(2) + (coefficient * boundary_est.stderr).powi(2)).sqrt();
    let body_side = body_est.value;
    let boundary_side = coefficient * boundary_est.value;
    Ok(LemmaCheck {
        holds: body_side <= boundary_side + 3.0 * stderr,
        body_side,
        boundary_side,
        stderr,
    })
}

/// Uniform sampler over a body in cone coordinates about `origin`.
///
/// Precomputes the boundary triangulation and the cone-volume weights; each
/// sample costs one binary search plus a simplex draw.
pub struct RadialSampler {
    origin: Point,
    dim: usize,
    simplices: Vec<Simplex>,
    cumulative: Vec<f64>,
}

impl RadialSampler {
    /// Errors unless `origin` is strictly interior.
    pub fn new(body: &ConvexBody, origin: &Point) -> Result<Self> {
        body.require_interior(origin)?;
        let mut simplices = Vec::new();
        let mut weights = Vec::new();
        for (facet_idx, simplex) in body.boundary_simplices() {
            let h = body.facets()[facet_idx].clearance(origin);
            let w = h * simplex.measure();
            if w > 0.0 {
                simplices.push(simplex);
                weights.push(w);
            }
        }
        if simplices.is_empty() {
            return Err(Error::DegenerateInput {
                dim: body.dim(),
                rank: 0,
            });
        }
        let cumulative = cumulative_weights(weights.into_iter());
        debug_assert!({
            let total = *cumulative.last().unwrap();
            (total / body.dim() as f64 - body.volume()).abs() <= 1e-9 * body.volume()
        });
        Ok(RadialSampler {
            origin: origin.clone(),
            dim: body.dim(),
            simplices,
            cumulative,
        })
    }

    /// One uniform sample: boundary point `x` weighted by cone volume, then
    /// radial fraction `t` with density `d·t^{d−1}`.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Point {
        let s = &self.simplices[pick_weighted(&self.cumulative, rng)];
        let x = sample_in_simplex(s, rng);
        let t = rng.random::<f64>().powf(1.0 / self.dim as f64);
        self.origin.add(&x.sub(&self.origin).scale(t))
    }
}

/// One uniform sample from the body in cone coordinates about `origin`.
/// Batch callers should construct a [`RadialSampler`] once instead.
pub fn radial_sample<R: Rng>(body: &ConvexBody, origin: &Point, rng: &mut R) -> Result<Point> {
    Ok(RadialSampler::new(body, origin)?.sample(rng))
}

/// Uniform point in a simplex: exponential spacings normalized to barycentric
/// weights.
pub fn sample_in_simplex<R: Rng>(simplex: &Simplex, rng: &mut R) -> Point {
    let verts = simplex.vertices();
    let mut weights: Vec<f64> = verts
        .iter()
        .map(|_| -f64::ln(1.0 - rng.random::<f64>()))
        .collect();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        weights = vec![1.0 / verts.len() as f64; verts.len()];
    } else {
        for w in &mut weights {
            *w /= total;
        }
    }
    let d = simplex.ambient_dim();
    let mut coords = vec![0.0; d];
    for (w, v) in weights.iter().zip(verts) {
        for (c, x) in coords.iter_mut().zip(v.coords()) {
            *c += w * x;
        }
    }
    Point::new(coords)
}

fn exact_over_simplices(simplices: &[Simplex], f: &ConvexFunction) -> f64 {
    match f {
        ConvexFunction::Affine(a) => simplices
            .iter()
            .map(|s| s.measure() * a.eval(&s.centroid()))
            .sum(),
        ConvexFunction::Quadratic {
            matrix,
            weights,
            constant,
        } => simplices
            .iter()
            .map(|s| quadratic_over_simplex(s, matrix, weights, *constant))
            .sum(),
        ConvexFunction::MaxAffine(_) => unreachable!("max-affine has no exact rule"),
    }
}

/// Degree-2 simplex rule, exact for quadratics over a k-simplex in ℝ^d.
fn quadratic_over_simplex(s: &Simplex, matrix: &[Vec<f64>], weights: &[f64], constant: f64) -> f64 {
    let verts = s.vertices();
    let k = s.intrinsic_dim();
    let measure = s.measure();
    if measure == 0.0 {
        return 0.0;
    }
    let d = s.ambient_dim();
    let mut vertex_sum = vec![0.0; d];
    let mut diag = 0.0;
    for v in verts {
        let xs = v.coords();
        for (acc, x) in vertex_sum.iter_mut().zip(xs) {
            *acc += x;
        }
        diag += quadratic_form(matrix, xs);
    }
    let pair = quadratic_form(matrix, &vertex_sum);
    let k1 = (k + 1) as f64;
    let k2 = (k + 2) as f64;
    measure
        * ((diag + pair) / (k1 * k2)
            + linalg::dot(weights, &vertex_sum) / k1
            + constant)
}

fn quadratic_form(matrix: &[Vec<f64>], x: &[f64]) -> f64 {
    matrix
        .iter()
        .zip(x)
        .map(|(row, &xi)| xi * linalg::dot(row, x))
        .sum()
}

fn finish_mc(scale: f64, sum: f64, sum_sq: f64, samples: u64) -> IntegralEstimate {
    let n = samples as f64;
    let mean = sum / n;
    let variance = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
    IntegralEstimate {
        value: scale * mean,
        stderr: scale * (variance / n).sqrt(),
        method: Method::MonteCarlo,
        samples,
    }
}

fn cumulative_weights(weights: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .map(|w| {
            acc += w;
            acc
        })
        .collect()
}

fn pick_weighted<R: Rng>(cumulative: &[f64], rng: &mut R) -> usize {
    let total = *cumulative.last().unwrap();
    let u = rng.random::<f64>() * total;
    cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
}
