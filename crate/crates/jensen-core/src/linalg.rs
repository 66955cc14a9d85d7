//! Small dense linear algebra over `Vec<f64>`, sized for d ≤ 6.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

pub(crate) fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when the matrix is singular at the given pivot tolerance.
pub(crate) fn solve(a: &[Vec<f64>], b: &[f64], pivot_tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot_row][col].abs() <= pivot_tol {
            return None;
        }
        m.swap(col, pivot_row);
        for row in (col + 1)..n {
            let factor = m[row][col] / m[col][col];
            if factor != 0.0 {
                for k in col..=n {
                    m[row][k] -= factor * m[col][k];
                }
            }
        }
    }

    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for col in (row + 1)..n {
            acc -= m[row][col] * x[col];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Row rank of `rows` at the given absolute tolerance on pivot magnitude.
pub(crate) fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut r = 0;
    for col in 0..cols {
        if r == m.len() {
            break;
        }
        let pivot_row = (r..m.len())
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot_row][col].abs() <= tol {
            continue;
        }
        m.swap(r, pivot_row);
        for row in (r + 1)..m.len() {
            let factor = m[row][col] / m[r][col];
            if factor != 0.0 {
                for k in col..cols {
                    m[row][k] -= factor * m[r][k];
                }
            }
        }
        r += 1;
    }
    r
}

/// A unit vector orthogonal to all of `rows`, which must have rank exactly
/// `dim − 1`. Returns `None` when the rows are rank-deficient, i.e. the
/// orthogonal complement is not a line.
pub(crate) fn hyperplane_normal(rows: &[Vec<f64>], dim: usize, tol: f64) -> Option<Vec<f64>> {
    debug_assert!(rows.iter().all(|r| r.len() == dim));
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let n_rows = m.len();
    // Column-pivoted elimination, recording which column holds each pivot.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for _ in 0..dim {
        if r == n_rows {
            break;
        }
        // Best remaining pivot over all non-pivot columns.
        let mut best: Option<(usize, usize, f64)> = None;
        for col in 0..dim {
            if pivot_cols.contains(&col) {
                continue;
            }
            for row in r..n_rows {
                let v = m[row][col].abs();
                if best.map_or(true, |(_, _, bv)| v > bv) {
                    best = Some((row, col, v));
                }
            }
        }
        let (row, col, v) = best?;
        if v <= tol {
            break;
        }
        m.swap(r, row);
        for other in 0..n_rows {
            if other != r {
                let factor = m[other][col] / m[r][col];
                if factor != 0.0 {
                    for k in 0..dim {
                        m[other][k] -= factor * m[r][k];
                    }
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if r != dim - 1 {
        return None;
    }
    let free_col = (0..dim).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut normal = vec![0.0; dim];
    normal[free_col] = 1.0;
    for (row, &col) in pivot_cols.iter().enumerate() {
        normal[col] = -m[row][free_col] / m[row][col];
    }
    let len = norm(&normal);
    Some(scale(&normal, 1.0 / len))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub(crate) fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let frobenius: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|x| x * x))
        .sum::<f64>()
        .sqrt();
    let stop = 1e-14 * (1.0 + frobenius);
    for _ in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[i][j].abs());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= stop {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}
