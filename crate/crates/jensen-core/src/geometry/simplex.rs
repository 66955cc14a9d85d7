use super::Point;
use crate::linalg;

/// A k-simplex embedded in ℝ^d (k ≤ d), stored as its k+1 vertices.
#[derive(Clone, Debug)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    /// Panics when the vertex list is empty or dimensions disagree;
    /// affine degeneracy is allowed and shows up as zero measure.
    pub fn new(vertices: Vec<Point>) -> Self {
        assert!(!vertices.is_empty(), "simplex needs at least one vertex");
        let d = vertices[0].dim();
        assert!(
            vertices.iter().all(|v| v.dim() == d),
            "simplex vertices must share a dimension"
        );
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Intrinsic dimension k (vertex count minus one).
    pub fn intrinsic_dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Lebesgue k-measure, `√det(EᵀE)/k!` for the edge matrix E from vertex 0.
    /// Affinely dependent vertices give 0.
    pub fn measure(&self) -> f64 {
        simplex_measure(self)
    }

    /// Vertex average.
    pub fn centroid(&self) -> Point {
        let k1 = self.vertices.len() as f64;
        let d = self.ambient_dim();
        let mut acc = vec![0.0; d];
        for v in &self.vertices {
            for (a, c) in acc.iter_mut().zip(v.coords()) {
                *a += c;
            }
        }
        Point::new(acc.into_iter().map(|a| a / k1).collect())
    }
}

/// Lebesgue k-measure of a k-simplex embedded in ℝ^d.
///
/// Computed as `√det(G)/k!` where `G = E Eᵀ` is the Gram matrix of the edge
/// vectors from vertex 0. Returns 0 for affinely dependent vertices.
pub fn simplex_measure(simplex: &Simplex) -> f64 {
    let verts = simplex.vertices();
    let k = verts.len() - 1;
    if k == 0 {
        return 0.0;
    }
    let edges: Vec<Vec<f64>> = verts[1..]
        .iter()
        .map(|v| linalg::sub(v.coords(), verts[0].coords()))
        .collect();
    let gram: Vec<Vec<f64>> = edges
        .iter()
        .map(|ei| edges.iter().map(|ej| linalg::dot(ei, ej)).collect())
        .collect();
    let det = gram_determinant(gram);
    if det <= 0.0 {
        return 0.0;
    }
    let mut k_factorial = 1.0;
    for i in 2..=k {
        k_factorial *= i as f64;
    }
    det.sqrt() / k_factorial
}

/// Determinant by in-place LU with partial pivoting; tiny negative results
/// from rounding are truncated by the caller.
fn gram_determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col];
        for row in (col + 1)..n {
            let factor = m[row][col] / m[col][col];
            if factor != 0.0 {
                for k in col..n {
                    m[row][k] -= factor * m[col][k];
                }
            }
        }
    }
    det
}
