use serde::{Deserialize, Serialize};

use crate::linalg;

/// A point (or displacement vector) in ℝ^d.
///
/// Serializes as a bare coordinate array. Dimension agreement is enforced by
/// the structures that own points, not by the point itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` as a displacement.
    pub fn sub(&self, other: &Point) -> Point {
        Point(linalg::sub(&self.0, &other.0))
    }

    pub fn scale(&self, factor: f64) -> Point {
        Point(linalg::scale(&self.0, factor))
    }

    pub fn dot(&self, other: &Point) -> f64 {
        linalg::dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.0)
    }

    pub fn dist(&self, other: &Point) -> f64 {
        linalg::dist(&self.0, &other.0)
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point(coords)
    }
}

impl From<&[f64]> for Point {
    fn from(coords: &[f64]) -> Self {
        Point(coords.to_vec())
    }
}
