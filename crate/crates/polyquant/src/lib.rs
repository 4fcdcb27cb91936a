//! Optimal n-point quantizers and exact quantization errors for uniform
//! distributions on boundaries of regular m-gons inscribed in the unit
//! circle.
//!
//! The closed forms (optimal point sets, vertex radius, quantization error
//! and its corner/side decomposition, quantization coefficient) live in
//! [`segment`], [`polygon`] and [`coefficient`]. The [`oracle`] module
//! provides the independent numerical route used to cross-check every
//! closed form: boundary Voronoi partitioning, quadrature distortion,
//! Lloyd iteration and 1-D minimization over the vertex radius.
//!
//! Everything is computed for circumradius 1; for circumradius R, scale
//! points by R and errors and coefficients by R^2.

pub mod cli;
pub mod coefficient;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod polygon;
pub mod render;
pub mod segment;
pub mod types;

pub use error::{Error, Result};
pub use geometry::{squared_distance, BoundaryMeasure, Point2, RegularPolygon};
pub use segment::SegmentSpec;
pub use types::{DistortionReport, Method, QuantizerSet, ReportMethod, ReportParams, SetMeta};
