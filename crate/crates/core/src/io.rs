//! JSON ingestion schemas and CSV writers for the command-line tool.
//!
//! Knot vectors arrive as `{"degree": m, "n": n, "knots": [t_{-m}..t_{n+m}]}`.
//! Curves add `"d"` and `"control"` (a list of `d`-dimensional points);
//! surfaces hold two knot-vector objects under `"u"` and `"v"` plus a control
//! net as a list of rows of points.

use crate::errors::{EvalError, KnotVectorError};
use crate::eval::{BSplineCurve, PointGrid};
use crate::knots::KnotVector;
use crate::surface::TensorProductSurface;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum IoError {
    #[error("JSON parse error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid knot vector: {0}")]
    Knots(#[from] KnotVectorError),

    #[error("invalid geometry: {0}")]
    Eval(#[from] EvalError),

    #[error("malformed parameter file: {0:?} is not a real number")]
    BadParameter(String),

    #[error("control points must all have dimension d = {expected}")]
    RaggedControl { expected: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnotVectorSchema {
    pub degree: usize,
    pub n: usize,
    pub knots: Vec<f64>,
}

impl KnotVectorSchema {
    pub fn to_knot_vector(&self) -> Result<KnotVector<f64>, KnotVectorError> {
        KnotVector::new(self.degree, self.n, self.knots.clone())
    }

    pub fn from_knot_vector(kv: &KnotVector<f64>) -> Self {
        KnotVectorSchema {
            degree: kv.degree(),
            n: kv.n(),
            knots: kv.knots().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSchema {
    pub degree: usize,
    pub n: usize,
    pub knots: Vec<f64>,
    pub d: usize,
    pub control: Vec<Vec<f64>>,
}

impl CurveSchema {
    pub fn to_curve(&self) -> Result<BSplineCurve<f64>, IoError> {
        let kv = KnotVector::new(self.degree, self.n, self.knots.clone())?;
        let mut flat = Vec::with_capacity(self.control.len() * self.d);
        for point in &self.control {
            if point.len() != self.d {
                return Err(IoError::RaggedControl { expected: self.d });
            }
            flat.extend_from_slice(point);
        }
        Ok(BSplineCurve::new(kv, self.d, flat)?)
    }

    pub fn from_curve(curve: &BSplineCurve<f64>) -> Self {
        let kv = curve.kv();
        CurveSchema {
            degree: kv.degree(),
            n: kv.n(),
            knots: kv.knots().to_vec(),
            d: curve.dim(),
            control: curve
                .control()
                .chunks(curve.dim())
                .map(|p| p.to_vec())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceSchema {
    pub u: KnotVectorSchema,
    pub v: KnotVectorSchema,
    pub d: usize,
    pub net: Vec<Vec<Vec<f64>>>,
}

impl SurfaceSchema {
    pub fn to_surface(&self) -> Result<TensorProductSurface<f64>, IoError> {
        let kv_u = self.u.to_knot_vector()?;
        let kv_v = self.v.to_knot_vector()?;
        let mut flat = Vec::new();
        for row in &self.net {
            for point in row {
                if point.len() != self.d {
                    return Err(IoError::RaggedControl { expected: self.d });
                }
                flat.extend_from_slice(point);
            }
        }
        Ok(TensorProductSurface::new(kv_u, kv_v, self.d, flat)?)
    }
}

/// Parse a curve JSON document.
pub fn parse_curve_json(text: &str) -> Result<BSplineCurve<f64>, IoError> {
    let schema: CurveSchema = serde_json::from_str(text)?;
    schema.to_curve()
}

/// Parse the knot-vector fields of a JSON document; extra fields (a curve's
/// control points, say) are ignored.
pub fn parse_knots_json(text: &str) -> Result<KnotVector<f64>, IoError> {
    let schema: KnotVectorSchema = serde_json::from_str(text)?;
    Ok(schema.to_knot_vector()?)
}

/// Parse a surface JSON document.
pub fn parse_surface_json(text: &str) -> Result<TensorProductSurface<f64>, IoError> {
    let schema: SurfaceSchema = serde_json::from_str(text)?;
    schema.to_surface()
}

/// Whitespace-separated evaluation parameters.
pub fn parse_params(text: &str) -> Result<Vec<f64>, IoError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| IoError::BadParameter(tok.to_string()))
        })
        .collect()
}

/// CSV for evaluated curve points: `u,x0,..,x{d-1}`, one row per parameter.
pub fn curve_points_csv(params: &[f64], grid: &PointGrid<f64>) -> String {
    let dim = grid.dim();
    let mut out = String::from("u");
    for c in 0..dim {
        out.push_str(&format!(",x{c}"));
    }
    out.push('\n');
    for (l, &u) in params.iter().enumerate() {
        out.push_str(&u.to_string());
        let p = grid.point(l, 0);
        for c in 0..dim {
            out.push_str(&format!(",{}", p[c]));
        }
        out.push('\n');
    }
    out
}

/// CSV for a surface sample grid: `u,w,x0,..,x{d-1}`, row-major in `u`.
pub fn surface_grid_csv(samples_u: &[f64], samples_v: &[f64], grid: &PointGrid<f64>) -> String {
    let dim = grid.dim();
    let mut out = String::from("u,w");
    for c in 0..dim {
        out.push_str(&format!(",x{c}"));
    }
    out.push('\n');
    for (iu, &u) in samples_u.iter().enumerate() {
        for (iv, &w) in samples_v.iter().enumerate() {
            out.push_str(&format!("{u},{w}"));
            let p = grid.point(iu, iv);
            for c in 0..dim {
                out.push_str(&format!(",{}", p[c]));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_json_round_trip() {
        let text = r#"{
            "degree": 2, "n": 2,
            "knots": [0, 0, 0, 1, 2, 2, 2],
            "d": 2,
            "control": [[0, 0], [1, 0], [1, 1], [0, 1]]
        }"#;
        let curve = parse_curve_json(text).unwrap();
        assert_eq!(curve.dim(), 2);
        assert_eq!(curve.kv().degree(), 2);
        let schema = CurveSchema::from_curve(&curve);
        let again = schema.to_curve().unwrap();
        assert_eq!(again, curve);
    }

    #[test]
    fn knots_json_accepts_curve_documents() {
        let text = r#"{
            "degree": 2, "n": 2,
            "knots": [0, 0, 0, 1, 2, 2, 2],
            "d": 1,
            "control": [[0], [1], [1], [0]]
        }"#;
        let kv = parse_knots_json(text).unwrap();
        assert_eq!(kv.n(), 2);
    }

    #[test]
    fn bad_documents_are_rejected() {
        assert!(parse_curve_json("{").is_err());
        let short = r#"{"degree": 2, "n": 2, "knots": [0, 0, 0], "d": 1, "control": [[0]]}"#;
        assert!(parse_curve_json(short).is_err());
        let ragged = r#"{
            "degree": 1, "n": 1,
            "knots": [0, 0, 1, 1],
            "d": 2,
            "control": [[0, 0], [1]]
        }"#;
        assert!(matches!(
            parse_curve_json(ragged),
            Err(IoError::RaggedControl { expected: 2 })
        ));
    }

    #[test]
    fn params_parse() {
        assert_eq!(parse_params("0 0.5\n1.25\t2").unwrap(), vec![0.0, 0.5, 1.25, 2.0]);
        assert!(parse_params("0 oops").is_err());
    }
}
