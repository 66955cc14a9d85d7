//! Body and report files.
//!
//! Body files hold either a raw vertex list or a generator spec:
//!
//! ```json
//! { "dim": 2, "vertices": [[1.0, 1.0], [-1.0, 1.0], ...] }
//! { "spec": { "kind": "cube", "params": { "dim": 3, "half_width": 1.0 } } }
//! ```
//!
//! Report files mirror the certificate report plus tool version, seed, and
//! tolerances. All reals are serialized in scientific notation with 17
//! significant digits, so every `f64` round-trips losslessly and repeated
//! runs are byte-identical.

use serde::{Deserialize, Serialize};

use jensen_core::bodies::{self, BodySpec};
use jensen_core::{CertificateReport, ConvexBody, Point};

/// A body on disk: exactly one of `vertices` (with `dim`) or `spec`.
#[derive(Debug, Serialize, Deserialize)]
pub struct BodyFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<BodySpec>,
}

impl BodyFile {
    pub fn from_body(body: &ConvexBody) -> Self {
        BodyFile {
            dim: Some(body.dim()),
            vertices: Some(body.vertices().iter().map(|p| p.coords().to_vec()).collect()),
            spec: None,
        }
    }

    pub fn into_body(self) -> Result<ConvexBody, String> {
        match (self.vertices, self.spec) {
            (Some(vertices), None) => {
                let dim = self.dim.ok_or("vertex body files need a \"dim\" field")?;
                if let Some(bad) = vertices.iter().find(|row| row.len() != dim) {
                    return Err(format!(
                        "vertex row {bad:?} does not match dim = {dim}"
                    ));
                }
                ConvexBody::from_vertices(vertices.into_iter().map(Point::new).collect())
                    .map_err(|e| e.to_string())
            }
            (None, Some(spec)) => bodies::generate(&spec).map_err(|e| e.to_string()),
            (Some(_), Some(_)) => Err("body file has both \"vertices\" and \"spec\"".into()),
            (None, None) => Err("body file has neither \"vertices\" nor \"spec\"".into()),
        }
    }
}

/// Tolerances a certification ran with.
#[derive(Debug, Serialize, Deserialize)]
pub struct ToleranceBlock {
    pub candidate_tol: f64,
    pub cert_rel: f64,
    pub geo_rel: f64,
}

/// Shape summary included in reports.
#[derive(Debug, Serialize, Deserialize)]
pub struct BodySummary {
    pub dim: usize,
    pub vertex_count: usize,
    pub facet_count: usize,
    pub volume: f64,
    pub surface_area: f64,
    pub diameter: f64,
}

impl BodySummary {
    pub fn new(body: &ConvexBody) -> Self {
        BodySummary {
            dim: body.dim(),
            vertex_count: body.vertices().len(),
            facet_count: body.facets().len(),
            volume: body.volume(),
            surface_area: body.surface_area(),
            diameter: body.diameter(),
        }
    }
}

/// Full certification report file.
#[derive(Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: ToleranceBlock,
    pub body: BodySummary,
    pub report: CertificateReport,
    /// Wall-clock timings; omitted by default so that reports with equal
    /// inputs and seed are byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Timings {
    pub build: f64,
    pub certify: f64,
}

/// Serializes with every `f64` in 17-significant-digit scientific notation.
pub fn to_json_17<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut serializer)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// serde_json formatter printing floats as `{:.16e}` (17 significant digits,
/// enough for exact `f64` round-trips).
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digit_floats_round_trip() {
        #[derive(Serialize, Deserialize)]
        struct Probe {
            values: Vec<f64>,
        }
        let probe = Probe {
            values: vec![
                1.0 / 3.0,
                2.0f64.sqrt(),
                -1.2345678901234567e-300,
                6.02214076e23,
                0.0,
            ],
        };
        let json = to_json_17(&probe);
        let back: Probe = serde_json::from_str(&json).unwrap();
        for (a, b) in probe.values.iter().zip(&back.values) {
            assert_eq!(a.to_bits(), b.to_bits(), "{a} vs {b}");
        }
    }

    #[test]
    fn body_file_requires_exactly_one_source() {
        let neither = BodyFile {
            dim: None,
            vertices: None,
            spec: None,
        };
        assert!(neither.into_body().is_err());

        let both = BodyFile {
            dim: Some(2),
            vertices: Some(vec![vec![0.0, 0.0]]),
            spec: Some(BodySpec::Cube {
                dim: 2,
                half_width: 1.0,
            }),
        };
        assert!(both.into_body().is_err());
    }

    #[test]
    fn vertex_rows_must_match_dim() {
        let bad = BodyFile {
            dim: Some(3),
            vertices: Some(vec![vec![0.0, 0.0], vec![1.0, 0.0, 0.0]]),
            spec: None,
        };
        assert!(bad.into_body().is_err());
    }
}
