//! Optimal n-means and exact quantization error for a uniform density on a
//! line segment AB, restricted to the trimmed sub-segment D1D2.
//!
//! The measure is the uniform density 1/l over all of AB restricted,
//! unnormalized, to D1D2. The error for n means is
//! (l - r1 - r2)^3 / (12 n^2 l), verified against direct quadrature of the
//! defining integral in the test suites.

use crate::error::{Error, Result};
use crate::geometry::{squared_distance, Point2};
use crate::types::{Method, QuantizerSet, SetMeta};

/// A segment AB with trim distances r1 (from A) and r2 (from B) defining
/// the sub-segment D1D2.
#[derive(Debug, Clone, Copy)]
pub struct SegmentSpec {
    a: Point2,
    b: Point2,
    length: f64,
    r1: f64,
    r2: f64,
}

impl SegmentSpec {
    pub fn new(a: Point2, b: Point2, r1: f64, r2: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::invalid("segment endpoints must be finite"));
        }
        let length = squared_distance(a, b).sqrt();
        if length <= 0.0 {
            return Err(Error::invalid("segment endpoints must be distinct"));
        }
        if !(r1 >= 0.0) || !(r2 >= 0.0) {
            return Err(Error::invalid("trim distances must be nonnegative"));
        }
        if r1 + r2 >= length {
            return Err(Error::invalid(format!(
                "trims r1 + r2 = {} leave no sub-segment of a segment of length {length}",
                r1 + r2
            )));
        }
        Ok(Self { a, b, length, r1, r2 })
    }

    pub fn a(&self) -> Point2 {
        self.a
    }

    pub fn b(&self) -> Point2 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    /// Length of D1D2.
    pub fn inner_length(&self) -> f64 {
        self.length - self.r1 - self.r2
    }

    /// M(t) = (1-t) a + t b.
    pub fn point_at(&self, t: f64) -> Point2 {
        Point2::new(
            self.a.x + t * (self.b.x - self.a.x),
            self.a.y + t * (self.b.y - self.a.y),
        )
    }
}

/// The optimal n points on D1D2, in increasing parameter order:
/// M(r1/l + (2j-1)/(2n) * (1 - r2/l - r1/l)) for j = 1..n.
pub fn segment_optimal_points(seg: &SegmentSpec, n: u32) -> Result<QuantizerSet> {
    if n == 0 {
        return Err(Error::invalid("point count n must be at least 1"));
    }
    let l = seg.length;
    let start = seg.r1 / l;
    let span = 1.0 - seg.r2 / l - seg.r1 / l;
    let points = (1..=n)
        .map(|j| {
            let t = start + (2.0 * j as f64 - 1.0) / (2.0 * n as f64) * span;
            seg.point_at(t)
        })
        .collect();
    Ok(QuantizerSet {
        points,
        meta: SetMeta {
            m: None,
            n: n as usize,
            k: None,
            r: None,
            method: Method::ClosedForm,
        },
    })
}

/// Exact n-th quantization error on D1D2: (l - r1 - r2)^3 / (12 n^2 l).
pub fn segment_quant_error(seg: &SegmentSpec, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("point count n must be at least 1"));
    }
    let w = seg.inner_length();
    Ok(w * w * w / (12.0 * (n as f64) * (n as f64) * seg.length))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_segment(r1: f64, r2: f64) -> SegmentSpec {
        SegmentSpec::new(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), r1, r2).unwrap()
    }

    #[test]
    fn untrimmed_two_means() {
        let q = segment_optimal_points(&unit_segment(0.0, 0.0), 2).unwrap();
        assert_eq!(q.len(), 2);
        assert!((q.points[0].x - 0.25).abs() < 1e-15);
        assert!((q.points[1].x - 0.75).abs() < 1e-15);
    }

    #[test]
    fn symmetric_trim_single_mean_is_midpoint() {
        let q = segment_optimal_points(&unit_segment(0.25, 0.25), 1).unwrap();
        assert!((q.points[0].x - 0.5).abs() < 1e-15);
        assert!(q.points[0].y.abs() < 1e-15);
    }

    #[test]
    fn trimmed_three_means_on_length_two() {
        let seg =
            SegmentSpec::new(Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), 0.5, 0.5).unwrap();
        let q = segment_optimal_points(&seg, 3).unwrap();
        let expected = [2.0 / 3.0, 1.0, 4.0 / 3.0];
        for (p, x) in q.points.iter().zip(expected) {
            assert!((p.x - x).abs() < 1e-14);
        }
    }

    #[test]
    fn equi_spacing_of_optimal_points() {
        let seg =
            SegmentSpec::new(Point2::new(1.0, 2.0), Point2::new(4.0, 6.0), 0.7, 0.3).unwrap();
        let n = 5u32;
        let q = segment_optimal_points(&seg, n).unwrap();
        let step = seg.inner_length() / n as f64;
        for w in q.points.windows(2) {
            let d = squared_distance(w[0], w[1]).sqrt();
            assert!((d - step).abs() < 1e-12);
        }
        let d1 = seg.point_at(seg.r1() / seg.length());
        let d2 = seg.point_at(1.0 - seg.r2() / seg.length());
        assert!((squared_distance(d1, q.points[0]).sqrt() - step / 2.0).abs() < 1e-12);
        assert!(
            (squared_distance(d2, *q.points.last().unwrap()).sqrt() - step / 2.0).abs() < 1e-12
        );
    }

    #[test]
    fn error_values() {
        assert!((segment_quant_error(&unit_segment(0.0, 0.0), 1).unwrap() - 1.0 / 12.0).abs()
            < 1e-16);
        assert!((segment_quant_error(&unit_segment(0.0, 0.0), 4).unwrap() - 1.0 / 192.0).abs()
            < 1e-16);
        let seg =
            SegmentSpec::new(Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), 0.5, 0.5).unwrap();
        assert!((segment_quant_error(&seg, 2).unwrap() - 1.0 / 96.0).abs() < 1e-16);
    }

    #[test]
    fn scaling_law() {
        let seg =
            SegmentSpec::new(Point2::new(0.0, 0.0), Point2::new(3.0, 0.0), 0.4, 0.9).unwrap();
        let scaled =
            SegmentSpec::new(Point2::new(0.0, 0.0), Point2::new(6.0, 0.0), 0.8, 1.8).unwrap();
        for n in [1u32, 2, 7] {
            let e = segment_quant_error(&seg, n).unwrap();
            let e2 = segment_quant_error(&scaled, n).unwrap();
            assert!((e2 / e - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(segment_optimal_points(&unit_segment(0.0, 0.0), 0).is_err());
        assert!(segment_quant_error(&unit_segment(0.0, 0.0), 0).is_err());
        let a = Point2::new(0.0, 0.0);
        assert!(SegmentSpec::new(a, a, 0.0, 0.0).is_err());
        assert!(SegmentSpec::new(a, Point2::new(1.0, 0.0), 0.5, 0.5).is_err());
        assert!(SegmentSpec::new(a, Point2::new(1.0, 0.0), -0.1, 0.0).is_err());
        assert!(SegmentSpec::new(a, Point2::new(f64::NAN, 0.0), 0.0, 0.0).is_err());
    }
}
