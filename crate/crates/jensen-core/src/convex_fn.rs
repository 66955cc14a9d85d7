//! Convex test functions: affine, max-of-affine, and positive-semidefinite
//! quadratic.
//!
//! Three analytic families are enough for testing — max-of-affine
//! approximates any convex function, and all three admit exact or
//! controlled-error integration. Each function knows its supporting affine
//! minorant at a point, the device that reduces the boundary-vs-body
//! comparison to a nonnegative convex function vanishing there.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::linalg;

/// An affine function `weights·x + constant`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineFn {
    pub weights: Vec<f64>,
    pub constant: f64,
}

impl AffineFn {
    pub fn new(weights: Vec<f64>, constant: f64) -> Self {
        AffineFn { weights, constant }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn eval(&self, x: &Point) -> f64 {
        linalg::dot(&self.weights, x.coords()) + self.constant
    }
}

/// A convex test function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ConvexFunction {
    /// `w·x + b`.
    Affine(AffineFn),
    /// `max_k (w_k·x + b_k)`; at least one piece.
    MaxAffine(Vec<AffineFn>),
    /// `xᵀQx + w·x + b` with `Q` symmetric positive semidefinite.
    Quadratic {
        matrix: Vec<Vec<f64>>,
        weights: Vec<f64>,
        constant: f64,
    },
}

impl ConvexFunction {
    pub fn affine(weights: Vec<f64>, constant: f64) -> Self {
        ConvexFunction::Affine(AffineFn::new(weights, constant))
    }

    /// Errors when `pieces` is empty or the pieces disagree on dimension.
    pub fn max_affine(pieces: Vec<AffineFn>) -> Result<Self> {
        let Some(first) = pieces.first() else {
            return Err(Error::InvalidSpec("max-affine needs at least one piece".into()));
        };
        let d = first.dim();
        if let Some(bad) = pieces.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: bad.dim(),
            });
        }
        Ok(ConvexFunction::MaxAffine(pieces))
    }

    /// Errors unless `matrix` is square, symmetric, and positive semidefinite
    /// (smallest eigenvalue at least `−1e−10·‖Q‖`).
    pub fn quadratic(matrix: Vec<Vec<f64>>, weights: Vec<f64>, constant: f64) -> Result<Self> {
        let d = weights.len();
        if matrix.len() != d || matrix.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: matrix.len(),
            });
        }
        let frobenius: f64 = matrix
            .iter()
            .flat_map(|r| r.iter().map(|x| x * x))
            .sum::<f64>()
            .sqrt();
        for i in 0..d {
            for j in 0..i {
                if (matrix[i][j] - matrix[j][i]).abs() > 1e-10 * (1.0 + frobenius) {
                    return Err(Error::InvalidSpec("quadratic matrix is not symmetric".into()));
                }
            }
        }
        let min_eigenvalue = linalg::symmetric_eigenvalues(&matrix)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -1e-10 * frobenius.max(1e-300) {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(ConvexFunction::Quadratic {
            matrix,
            weights,
            constant,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexFunction::Affine(a) => a.dim(),
            ConvexFunction::MaxAffine(pieces) => pieces[0].dim(),
            ConvexFunction::Quadratic { weights, .. } => weights.len(),
        }
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: self.dim(),
            });
        }
        Ok(())
    }

    /// Evaluates at `x`, checking the dimension.
    pub fn eval(&self, x: &Point) -> Result<f64> {
        self.check_dim(x.dim()).map(|_| self.eval_unchecked(x))
    }

    /// Evaluation without the dimension check, for sampling loops.
    pub fn eval_unchecked(&self, x: &Point) -> f64 {
        match self {
            ConvexFunction::Affine(a) => a.eval(x),
            ConvexFunction::MaxAffine(pieces) => pieces
                .iter()
                .map(|p| p.eval(x))
                .fold(f64::NEG_INFINITY, f64::max),
            ConvexFunction::Quadratic {
                matrix,
                weights,
                constant,
            } => {
                let xs = x.coords();
                let mut q = 0.0;
                for (row, &xi) in matrix.iter().zip(xs) {
                    q += xi * linalg::dot(row, xs);
                }
                q + linalg::dot(weights, xs) + constant
            }
        }
    }

    /// The supporting affine minorant at the origin: `g(0) = f(0)` and
    /// `g ≤ f` everywhere. For max-affine ties the smallest-index active
    /// piece is chosen.
    pub fn supporting_affine_at_origin(&self) -> AffineFn {
        self.supporting_affine_at(&Point::origin(self.dim()))
            .expect("dimension agrees by construction")
    }

    /// The supporting affine minorant at `p`: the tangent of the quadratic,
    /// the active piece of a max-affine (smallest index on ties), or the
    /// affine function itself.
    pub fn supporting_affine_at(&self, p: &Point) -> Result<AffineFn> {
        self.check_dim(p.dim())?;
        Ok(match self {
            ConvexFunction::Affine(a) => a.clone(),
            ConvexFunction::MaxAffine(pieces) => {
                let best = pieces
                    .iter()
                    .map(|piece| piece.eval(p))
                    .fold(f64::NEG_INFINITY, f64::max);
                pieces
                    .iter()
                    .find(|piece| piece.eval(p) == best)
                    .expect("max over a nonempty list is attained")
                    .clone()
            }
            ConvexFunction::Quadratic {
                matrix, weights, ..
            } => {
                // Gradient 2Qp + w; tangent g(x) = f(p) + ∇f(p)·(x − p).
                let xs = p.coords();
                let grad: Vec<f64> = matrix
                    .iter()
                    .zip(weights)
                    .map(|(row, w)| 2.0 * linalg::dot(row, xs) + w)
                    .collect();
                let constant = self.eval_unchecked(p) - linalg::dot(&grad, xs);
                AffineFn::new(grad, constant)
            }
        })
    }

    /// `self − g` for an affine `g`, staying in the same family. With `g`
    /// supporting at `p`, the result is nonnegative, convex, and vanishes
    /// at `p`.
    pub fn subtract_affine(&self, g: &AffineFn) -> ConvexFunction {
        match self {
            ConvexFunction::Affine(a) => ConvexFunction::Affine(AffineFn::new(
                linalg::sub(&a.weights, &g.weights),
                a.constant - g.constant,
            )),
            ConvexFunction::MaxAffine(pieces) => ConvexFunction::MaxAffine(
                pieces
                    .iter()
                    .map(|piece| {
                        AffineFn::new(
                            linalg::sub(&piece.weights, &g.weights),
                            piece.constant - g.constant,
                        )
                    })
                    .collect(),
            ),
            ConvexFunction::Quadratic {
                matrix,
                weights,
                constant,
            } => ConvexFunction::Quadratic {
                matrix: matrix.clone(),
                weights: linalg::sub(weights, &g.weights),
                constant: constant - g.constant,
            },
        }
    }
}

/// Seeded generators for the random test battery.
pub mod battery {
    use rand::Rng;
    use rand_distr::StandardNormal;

    use super::{AffineFn, ConvexFunction};

    pub fn random_affine<R: Rng>(dim: usize, rng: &mut R) -> ConvexFunction {
        ConvexFunction::Affine(random_piece(dim, rng))
    }

    /// A max of 2..=max_pieces random affine pieces.
    pub fn random_max_affine<R: Rng>(dim: usize, max_pieces: usize, rng: &mut R) -> ConvexFunction {
        let count = rng.random_range(2..=max_pieces.max(2));
        ConvexFunction::MaxAffine((0..count).map(|_| random_piece(dim, rng)).collect())
    }

    /// A random positive-semidefinite quadratic `xᵀ(AᵀA)x + w·x + b`.
    pub fn random_quadratic<R: Rng>(dim: usize, rng: &mut R) -> ConvexFunction {
        let a: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
            .collect();
        let mut matrix = vec![vec![0.0; dim]; dim];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..dim).map(|k| a[k][i] * a[k][j]).sum::<f64>() / dim as f64;
            }
        }
        let weights: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let constant = rng.sample::<f64, _>(StandardNormal);
        ConvexFunction::Quadratic {
            matrix,
            weights,
            constant,
        }
    }

    fn random_piece<R: Rng>(dim: usize, rng: &mut R) -> AffineFn {
        AffineFn::new(
            (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect(),
            rng.sample::<f64, _>(StandardNormal),
        )
    }
}
