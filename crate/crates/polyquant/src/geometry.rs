//! Geometry of the regular m-gon inscribed in the unit circle: vertices,
//! side length, side parametrization and the uniform arc-length measure
//! on the boundary.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest supported side count; keeps sin(pi/m) bounded away from zero.
pub const MAX_SIDES: u32 = 1_000_000;

/// A point in the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Squared Euclidean distance between two points.
pub fn squared_distance(a: Point2, b: Point2) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Regular m-gon inscribed in the unit circle, vertex 1 on the positive x-axis.
///
/// Vertices are indexed 1-based; index m+1 wraps to vertex 1.
#[derive(Debug, Clone)]
pub struct RegularPolygon {
    m: u32,
    vertices: Vec<Point2>,
    side_length: f64,
}

impl RegularPolygon {
    pub fn new(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::invalid(format!(
                "a polygon needs at least 3 sides, got {m}"
            )));
        }
        if m > MAX_SIDES {
            return Err(Error::invalid(format!(
                "side count {m} exceeds the supported maximum {MAX_SIDES}"
            )));
        }
        let mf = m as f64;
        let vertices = (0..m)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / mf;
                Point2::new(theta.cos(), theta.sin())
            })
            .collect();
        let side_length = 2.0 * (PI / mf).sin();
        Ok(Self {
            m,
            vertices,
            side_length,
        })
    }

    pub fn sides(&self) -> u32 {
        self.m
    }

    pub fn circumradius(&self) -> f64 {
        1.0
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    pub fn perimeter(&self) -> f64 {
        self.m as f64 * self.side_length
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Vertex j (1-based); j = m+1 is identified with vertex 1.
    pub fn vertex(&self, j: u32) -> Point2 {
        debug_assert!(j >= 1);
        self.vertices[((j - 1) % self.m) as usize]
    }

    /// Point on side j at parameter t: M_j(t) = t*a_{j+1} + (1-t)*a_j,
    /// so M_j(0) is vertex j and M_j(1) is vertex j+1.
    pub fn side_point(&self, j: u32, t: f64) -> Result<Point2> {
        if j < 1 || j > self.m {
            return Err(Error::invalid(format!(
                "side index {j} out of range 1..={}",
                self.m
            )));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::invalid(format!("side parameter {t} outside [0, 1]")));
        }
        Ok(self.side_point_unchecked(j, t))
    }

    pub(crate) fn side_point_unchecked(&self, j: u32, t: f64) -> Point2 {
        let a = self.vertex(j);
        let b = self.vertex(j + 1);
        Point2::new(b.x * t + (1.0 - t) * a.x, b.y * t + (1.0 - t) * a.y)
    }
}

/// Uniform probability measure on the polygon boundary by arc length.
///
/// The density is 1/(m*l) per unit arc length; per side the parameter
/// measure is dP = (1/m)|dt|.
#[derive(Debug, Clone)]
pub struct BoundaryMeasure {
    polygon: RegularPolygon,
    density: f64,
}

impl BoundaryMeasure {
    pub fn new(polygon: RegularPolygon) -> Self {
        let density = 1.0 / (polygon.m as f64 * polygon.side_length);
        Self { polygon, density }
    }

    pub fn polygon(&self) -> &RegularPolygon {
        &self.polygon
    }

    /// Density per unit arc length, 1/(m*l).
    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn total_mass(&self) -> f64 {
        self.density * self.polygon.perimeter()
    }
}
