//! A dense two-phase simplex solver for tiny linear programs.
//!
//! Problems here have at most d+1 ≈ 7 structural variables and a few hundred
//! constraints (one per facet), so a dense tableau with Bland's
//! anti-cycling rule is the right trade: deterministic and simple, with
//! nothing clever to go wrong. Variables are free; internally each splits
//! into a difference of two nonnegative ones.
//!
//! [`LinearProgram::solve_lex_min`] resolves degenerate optima: it pins the
//! objective at its optimum and then minimizes each variable in index order,
//! returning the lexicographically smallest point of the optimal face.

use crate::error::{Error, Result};
use crate::tolerances::{LP_EPS, LP_FEAS};

/// `minimize c·x` over free `x` subject to `≤` and `=` constraints.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<(Vec<f64>, Rel, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rel {
    Le,
    Eq,
}

/// An optimal solution: the point and the objective value.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

impl LinearProgram {
    pub fn minimize(objective: Vec<f64>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
        }
    }

    /// Adds `coeffs·x ≤ bound`.
    pub fn add_le(&mut self, coeffs: Vec<f64>, bound: f64) {
        debug_assert_eq!(coeffs.len(), self.objective.len());
        self.rows.push((coeffs, Rel::Le, bound));
    }

    /// Adds `coeffs·x = bound`.
    pub fn add_eq(&mut self, coeffs: Vec<f64>, bound: f64) {
        debug_assert_eq!(coeffs.len(), self.objective.len());
        self.rows.push((coeffs, Rel::Eq, bound));
    }

    /// Two-phase simplex. Errors on infeasible or unbounded problems.
    pub fn solve(&self) -> Result<LpSolution> {
        let x = Tableau::build(self)?.run()?;
        Ok(LpSolution {
            value: dot(&self.objective, &x),
            x,
        })
    }

    /// Solves the program, then selects the lexicographically smallest point
    /// of the optimal face: the objective is fixed at its optimum and each
    /// variable is minimized in index order, pinning it before the next.
    pub fn solve_lex_min(&self) -> Result<LpSolution> {
        let first = self.solve()?;
        let n = self.objective.len();
        let mut refined = self.clone();
        refined.add_eq(self.objective.clone(), first.value);
        let mut x = first.x;
        for j in 0..n {
            let mut unit = vec![0.0; n];
            unit[j] = 1.0;
            let sub = LinearProgram {
                objective: unit.clone(),
                rows: refined.rows.clone(),
            };
            let best = sub.solve()?;
            refined.add_eq(unit, best.value);
            x = best.x;
        }
        Ok(LpSolution {
            value: dot(&self.objective, &x),
            x,
        })
    }
}

/// Standard-form tableau: `A z = b`, `z ≥ 0`, `b ≥ 0`. Each free variable
/// occupies two columns (positive and negative part), every `≤` row gets a
/// slack, and rows whose slack cannot seed the basis get an artificial.
struct Tableau {
    /// rows × cols coefficient matrix, `cols = 2n + slacks + artificials`.
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    cost: Vec<f64>,
    basis: Vec<usize>,
    num_structural: usize,
    first_artificial: usize,
    scale: f64,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Result<Tableau> {
        let n = lp.objective.len();
        let m = lp.rows.len();
        if m == 0 {
            return Err(Error::LpFailure("no constraints".into()));
        }
        let num_slacks = lp.rows.iter().filter(|r| r.1 == Rel::Le).count();
        let num_structural = 2 * n;
        let first_artificial = num_structural + num_slacks;
        let cols = first_artificial + m; // worst case: artificial per row

        let mut a = vec![vec![0.0; cols]; m];
        let mut b = vec![0.0; m];
        let mut basis = vec![usize::MAX; m];
        let mut next_slack = num_structural;
        let mut next_artificial = first_artificial;

        for (row, (coeffs, rel, bound)) in lp.rows.iter().enumerate() {
            let flip = if *bound < 0.0 { -1.0 } else { 1.0 };
            for (j, &c) in coeffs.iter().enumerate() {
                a[row][2 * j] = flip * c;
                a[row][2 * j + 1] = -flip * c;
            }
            b[row] = flip * bound;
            if *rel == Rel::Le {
                a[row][next_slack] = flip;
                if flip > 0.0 {
                    basis[row] = next_slack;
                }
                next_slack += 1;
            }
            if basis[row] == usize::MAX {
                a[row][next_artificial] = 1.0;
                basis[row] = next_artificial;
                next_artificial += 1;
            }
        }

        let mut cost = vec![0.0; cols];
        for (j, &c) in lp.objective.iter().enumerate() {
            cost[2 * j] = c;
            cost[2 * j + 1] = -c;
        }
        let scale = b.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));

        Ok(Tableau {
            a,
            b,
            cost,
            basis,
            num_structural,
            first_artificial,
            scale,
        })
    }

    fn run(mut self) -> Result<Vec<f64>> {
        // Phase 1: minimize the sum of artificials.
        let cols = self.a[0].len();
        let mut phase1 = vec![0.0; cols];
        for c in phase1.iter_mut().skip(self.first_artificial) {
            *c = 1.0;
        }
        let feasibility = self.optimize(&phase1)?;
        if feasibility > LP_FEAS * self.scale.max(1.0) {
            return Err(Error::LpFailure(format!(
                "infeasible (phase-1 optimum {feasibility:.3e})"
            )));
        }
        self.evict_artificials();

        // Phase 2: minimize the real objective over non-artificial columns.
        let cost = std::mem::take(&mut self.cost);
        self.optimize(&cost)?;

        let mut x = vec![0.0; self.num_structural / 2];
        for (row, &col) in self.basis.iter().enumerate() {
            if col < self.num_structural {
                if col % 2 == 0 {
                    x[col / 2] += self.b[row];
                } else {
                    x[col / 2] -= self.b[row];
                }
            }
        }
        Ok(x)
    }

    /// Bland's rule simplex on the current basis; returns the objective value.
    /// Columns at or past `first_artificial` are never entered once phase 1
    /// has zeroed them out of the cost.
    fn optimize(&mut self, cost: &[f64]) -> Result<f64> {
        let m = self.a.len();
        let cols = self.a[0].len();
        // Reduced costs require the basic components eliminated; recompute
        // multipliers each iteration (dense and small, clarity wins).
        let max_iterations = 10_000 + 200 * (m + cols);
        for _ in 0..max_iterations {
            // y solves Bᵀy = c_B by elimination through the current basis:
            // reduced cost of column j is c_j − y·A_j. With a dense explicit
            // inverse-free tableau we instead keep A in updated form, so the
            // reduced cost is c̄_j = c_j − Σ_rows c_B[row]·a[row][j].
            let entering = (0..cols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                if cost[j] == 0.0 && j >= self.first_artificial {
                    return false; // retired artificial
                }
                self.reduced_cost(cost, j) < -LP_EPS * self.scale.max(1.0)
            });
            let Some(enter) = entering else {
                let value = self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(row, &col)| cost[col] * self.b[row])
                    .sum();
                return Ok(value);
            };

            let mut leave: Option<(usize, f64)> = None;
            for row in 0..m {
                let coeff = self.a[row][enter];
                if coeff > LP_EPS {
                    let ratio = self.b[row] / coeff;
                    let better = match leave {
                        None => true,
                        Some((best_row, best_ratio)) => {
                            ratio < best_ratio - LP_EPS
                                || (ratio < best_ratio + LP_EPS
                                    && self.basis[row] < self.basis[best_row])
                        }
                    };
                    if better {
                        leave = Some((row, ratio));
                    }
                }
            }
            let Some((pivot_row, _)) = leave else {
                return Err(Error::LpFailure("unbounded".into()));
            };
            self.pivot(pivot_row, enter);
        }
        Err(Error::LpFailure("iteration limit reached".into()))
    }

    fn reduced_cost(&self, cost: &[f64], j: usize) -> f64 {
        let mut r = cost[j];
        for (row, &col) in self.basis.iter().enumerate() {
            if cost[col] != 0.0 {
                r -= cost[col] * self.a[row][j];
            }
        }
        r
    }

    fn pivot(&mut self, pivot_row: usize, enter: usize) {
        let m = self.a.len();
        let cols = self.a[0].len();
        let p = self.a[pivot_row][enter];
        for j in 0..cols {
            self.a[pivot_row][j] /= p;
        }
        self.b[pivot_row] /= p;
        for row in 0..m {
            if row == pivot_row {
                continue;
            }
            let factor = self.a[row][enter];
            if factor != 0.0 {
                for j in 0..cols {
                    self.a[row][j] -= factor * self.a[pivot_row][j];
                }
                self.b[row] -= factor * self.b[pivot_row];
            }
        }
        self.basis[pivot_row] = enter;
    }

    /// Pivots leftover artificial variables out of the basis after phase 1;
    /// rows that admit no pivot are redundant and are cleared in place.
    fn evict_artificials(&mut self) {
        let m = self.a.len();
        for row in 0..m {
            if self.basis[row] < self.first_artificial {
                continue;
            }
            let pivot_col = (0..self.first_artificial)
                .find(|&j| self.a[row][j].abs() > LP_EPS && !self.basis.contains(&j));
            if let Some(col) = pivot_col {
                self.pivot(row, col);
            } else {
                // Redundant row: zero it so it can never constrain a pivot.
                for v in self.a[row].iter_mut() {
                    *v = 0.0;
                }
                self.b[row] = 0.0;
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
