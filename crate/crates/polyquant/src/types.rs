//! Shared result types: quantizer point sets and distortion reports.

use crate::geometry::Point2;

/// How a quantizer set was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Lloyd,
    Manual,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Lloyd => "lloyd",
            Method::Manual => "manual",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SetMeta {
    /// Side count of the polygon the set lives on, when applicable.
    pub m: Option<u32>,
    pub n: usize,
    pub k: Option<u32>,
    /// Vertex trim radius of the closed-form construction.
    pub r: Option<f64>,
    pub method: Method,
}

/// An ordered finite set of plane points with construction metadata.
#[derive(Debug, Clone)]
pub struct QuantizerSet {
    pub points: Vec<Point2>,
    pub meta: SetMeta,
}

impl QuantizerSet {
    /// Wraps an arbitrary point list with no construction provenance.
    pub fn manual(points: Vec<Point2>) -> Self {
        let n = points.len();
        Self {
            points,
            meta: SetMeta {
                m: None,
                n,
                k: None,
                r: None,
                method: Method::Manual,
            },
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True if any two points coincide exactly.
    pub fn has_duplicates(&self) -> bool {
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                if a.x == b.x && a.y == b.y {
                    return true;
                }
            }
        }
        false
    }
}

/// Which route produced a distortion value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMethod {
    ClosedForm,
    Quadrature,
}

impl ReportMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportMethod::ClosedForm => "closed_form",
            ReportMethod::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportParams {
    pub m: Option<u32>,
    pub n: usize,
    pub k: Option<u32>,
    pub r: Option<f64>,
}

/// A distortion value, optionally split into the corner and side
/// contributions, with the method that produced it.
#[derive(Debug, Clone)]
pub struct DistortionReport {
    pub total: f64,
    pub corner_part: Option<f64>,
    pub side_part: Option<f64>,
    pub method: ReportMethod,
    pub params: ReportParams,
}
