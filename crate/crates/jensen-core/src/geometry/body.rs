use crate::error::{Error, Result};
use crate::tolerances::GEO_REL;

use super::hull::{diameter, facet_enumeration, triangulate_facet};
use super::{Facet, Point, Simplex};

/// A full-dimensional compact convex polytope with consistent vertex and
/// facet representations, plus its measures and centroids.
///
/// Immutable after construction; cheap to share across threads.
#[derive(Clone, Debug)]
pub struct ConvexBody {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    volume: f64,
    surface_area: f64,
    body_centroid: Point,
    boundary_centroid: Point,
    diameter: f64,
}

/// Builds a [`ConvexBody`] from its vertex list.
///
/// Volume is the sum of signed cone volumes over the facets from an interior
/// point, the body centroid is the measure-weighted average of the cone
/// d-simplices' centroids, and the boundary centroid the measure-weighted
/// average of the facet centroids. Inputs that are not extreme points of
/// their own hull are rejected.
pub fn build_body(vertices: Vec<Point>) -> Result<ConvexBody> {
    if vertices.is_empty() {
        return Err(Error::DegenerateInput { dim: 0, rank: 0 });
    }
    let dim = vertices[0].dim();
    let hull = facet_enumeration(&vertices, dim)?;
    if let Some(&index) = hull.non_extreme.first() {
        return Err(Error::NonExtremeVertex { index });
    }

    let coords: Vec<Vec<f64>> = vertices.iter().map(|p| p.coords().to_vec()).collect();
    let diam = diameter(&coords);

    // The vertex average is strictly interior to a full-dimensional hull.
    let interior = {
        let mut acc = vec![0.0; dim];
        for p in &vertices {
            for (a, c) in acc.iter_mut().zip(p.coords()) {
                *a += c;
            }
        }
        Point::new(acc.into_iter().map(|a| a / vertices.len() as f64).collect())
    };

    let mut volume = 0.0;
    let mut surface_area = 0.0;
    let mut body_weighted = vec![0.0; dim];
    let mut boundary_weighted = vec![0.0; dim];

    let mut body = ConvexBody {
        dim,
        vertices,
        facets: hull.facets,
        volume: 0.0,
        surface_area: 0.0,
        body_centroid: Point::origin(dim),
        boundary_centroid: Point::origin(dim),
        diameter: diam,
    };

    for facet in &body.facets {
        let height = facet.clearance(&interior);
        surface_area += facet.measure();
        for (w, c) in boundary_weighted.iter_mut().zip(facet.centroid().coords()) {
            *w += facet.measure() * c;
        }
        for simplex in triangulate_facet(facet, &body) {
            let cone_volume = height * simplex.measure() / dim as f64;
            volume += cone_volume;
            // Cone centroid: average of the apex and the base vertices.
            let mut c = interior.coords().to_vec();
            for v in simplex.vertices() {
                for (a, x) in c.iter_mut().zip(v.coords()) {
                    *a += x;
                }
            }
            for (w, x) in body_weighted.iter_mut().zip(&c) {
                *w += cone_volume * x / (dim as f64 + 1.0);
            }
        }
    }

    if volume <= 0.0 {
        return Err(Error::DegenerateInput { dim, rank: dim });
    }

    body.volume = volume;
    body.surface_area = surface_area;
    body.body_centroid = Point::new(body_weighted.into_iter().map(|w| w / volume).collect());
    body.boundary_centroid =
        Point::new(boundary_weighted.into_iter().map(|w| w / surface_area).collect());

    debug_assert!({
        let recon: f64 = body
            .facets
            .iter()
            .map(|f| f.clearance(&body.body_centroid) * f.measure() / dim as f64)
            .sum();
        (recon - volume).abs() <= 1e-9 * volume
    });

    Ok(body)
}

impl ConvexBody {
    /// Builds the body from its vertex list; see [`build_body`].
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self> {
        build_body(vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// |Ω|, the d-dimensional volume.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// |∂Ω|, the (d−1)-dimensional boundary measure.
    pub fn surface_area(&self) -> f64 {
        self.surface_area
    }

    pub fn body_centroid(&self) -> &Point {
        &self.body_centroid
    }

    pub fn boundary_centroid(&self) -> &Point {
        &self.boundary_centroid
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Absolute geometric tolerance for this body: `GEO_REL × diameter`.
    pub fn geo_tol(&self) -> f64 {
        GEO_REL * self.diameter
    }

    /// Smallest clearance of `p` over all facets (negative outside).
    pub fn interior_clearance(&self, p: &Point) -> f64 {
        self.facets
            .iter()
            .map(|f| f.clearance(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `p` is in the body, with `tol` slack on each facet.
    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.interior_clearance(p) >= -tol
    }

    /// Errors unless `p` is strictly interior (clearance above `geo_tol`).
    pub fn require_interior(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        let tol = self.geo_tol();
        for (i, f) in self.facets.iter().enumerate() {
            let c = f.clearance(p);
            if c <= tol {
                return Err(Error::OriginNotInterior {
                    facet: i,
                    clearance: c,
                });
            }
        }
        Ok(())
    }

    /// The body shifted by `shift`, with measures carried over exactly.
    pub fn translate(&self, shift: &Point) -> ConvexBody {
        ConvexBody {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.add(shift)).collect(),
            facets: self.facets.iter().map(|f| f.translated(shift)).collect(),
            volume: self.volume,
            surface_area: self.surface_area,
            body_centroid: self.body_centroid.add(shift),
            boundary_centroid: self.boundary_centroid.add(shift),
            diameter: self.diameter,
        }
    }

    /// Cone decomposition of the body into d-simplices: the interior apex
    /// point joined to every facet triangle. Measures sum to the volume.
    pub fn body_simplices(&self, apex: &Point) -> Vec<Simplex> {
        let mut out = Vec::new();
        for facet in &self.facets {
            for simplex in triangulate_facet(facet, self) {
                let mut verts = Vec::with_capacity(self.dim + 1);
                verts.push(apex.clone());
                verts.extend(simplex.vertices().iter().cloned());
                let cone = Simplex::new(verts);
                if cone.measure() > 0.0 {
                    out.push(cone);
                }
            }
        }
        out
    }

    /// Triangulation of the boundary into (d−1)-simplices, paired with the
    /// index of the facet each simplex came from.
    pub fn boundary_simplices(&self) -> Vec<(usize, Simplex)> {
        let mut out = Vec::new();
        for (i, facet) in self.facets.iter().enumerate() {
            for simplex in triangulate_facet(facet, self) {
                out.push((i, simplex));
            }
        }
        out
    }
}
