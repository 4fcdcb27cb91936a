//! Closed-form optimal sets of n = m*k means on the polygon boundary, the
//! optimal vertex radius r, and the exact quantization error with its
//! corner/side decomposition.
//!
//! For k = 1 the side term vanishes and the structure degenerates to the
//! m corner points at r = l/2; the closed forms extend continuously, so
//! k = 1 is accepted everywhere except `side_error` (whose expression
//! divides by (k-1)^2).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{Point2, RegularPolygon, MAX_SIDES};
use crate::types::{DistortionReport, Method, QuantizerSet, ReportMethod, ReportParams, SetMeta};

fn check_m(m: u32) -> Result<f64> {
    if m < 3 {
        return Err(Error::invalid(format!("side count must be >= 3, got {m}")));
    }
    if m > MAX_SIDES {
        return Err(Error::invalid(format!(
            "side count {m} exceeds the supported maximum {MAX_SIDES}"
        )));
    }
    Ok(m as f64)
}

fn check_r(r: f64, half_side: f64, allow_zero: bool) -> Result<()> {
    // slack of a few ulps so that the l/2 endpoint survives rounding in sin
    let ok = r.is_finite()
        && r <= half_side + 1e-12
        && if allow_zero { r >= 0.0 } else { r > 0.0 };
    if !ok {
        let lo = if allow_zero { "[0" } else { "(0" };
        return Err(Error::invalid(format!(
            "vertex radius {r} outside {lo}, {half_side}]"
        )));
    }
    Ok(())
}

/// Optimal vertex radius r* = 4 sin(pi/m) / (2(k-1) sqrt(3 cos^2(pi/m) + 1) + 4).
///
/// At k = 1 this reduces to sin(pi/m) = l/2.
pub fn vertex_radius(m: u32, k: u32) -> Result<f64> {
    let mf = check_m(m)?;
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let s = (PI / mf).sin();
    let c = (PI / mf).cos();
    Ok(4.0 * s / (2.0 * (k as f64 - 1.0) * (3.0 * c * c + 1.0).sqrt() + 4.0))
}

/// The m corner points a_j for a vertex radius r.
///
/// a_1 = (1 - (r/2) sin(pi/m), 0); a_j for j >= 2 is the conditional mean
/// of the two half-sides adjacent to vertex j. Both expressions collapse to
/// (1 - (r/2) sin(pi/m)) times the vertex direction.
pub fn corner_points(p: &RegularPolygon, r: f64) -> Result<Vec<Point2>> {
    let m = p.sides();
    let mf = m as f64;
    check_r(r, p.side_length() / 2.0, false)?;
    let s = (PI / mf).sin();
    let mut points = Vec::with_capacity(m as usize);
    points.push(Point2::new(1.0 - 0.5 * r * s, 0.0));
    // u = r (cos(2 pi / m) - 1) csc(pi / m)
    let u = r * ((2.0 * PI / mf).cos() - 1.0) / s;
    for j in 2..=m {
        let angle = 2.0 * PI * (j as f64 - 1.0) / mf;
        points.push(Point2::new(
            0.25 * angle.cos() * (u + 4.0),
            angle.sin() * (0.25 * u + 1.0),
        ));
    }
    Ok(points)
}

/// The k-1 interior points per side: M_j(r/l + (2i-1)/(2(k-1)) (1 - 2r/l))
/// for i = 1..k-1, returned as one list per side. Empty lists for k = 1.
pub fn side_points(p: &RegularPolygon, k: u32, r: f64) -> Result<Vec<Vec<Point2>>> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let l = p.side_length();
    check_r(r, l / 2.0, false)?;
    let m = p.sides();
    if k == 1 {
        return Ok(vec![Vec::new(); m as usize]);
    }
    let start = r / l;
    let span = 1.0 - 2.0 * r / l;
    let per_side = (k - 1) as f64;
    let lists = (1..=m)
        .map(|j| {
            (1..k)
                .map(|i| {
                    let t = start + (2.0 * i as f64 - 1.0) / (2.0 * per_side) * span;
                    p.side_point_unchecked(j, t)
                })
                .collect()
        })
        .collect();
    Ok(lists)
}

/// The closed-form optimal set of n = m*k means: corners a_1..a_m at the
/// optimal radius, then the side lists for j = 1..m in order.
pub fn optimal_mk_set(m: u32, k: u32) -> Result<QuantizerSet> {
    let p = RegularPolygon::new(m)?;
    let r = vertex_radius(m, k)?;
    let mut points = corner_points(&p, r)?;
    for side in side_points(&p, k, r)? {
        points.extend(side);
    }
    debug_assert_eq!(points.len(), (m * k) as usize);
    Ok(QuantizerSet {
        points,
        meta: SetMeta {
            m: Some(m),
            n: (m * k) as usize,
            k: Some(k),
            r: Some(r),
            method: Method::ClosedForm,
        },
    })
}

/// Error contributed by all m corner points:
/// (1/24) r^3 (3 cos(2 pi/m) + 5) csc(pi/m).
pub fn corner_error(m: u32, r: f64) -> Result<f64> {
    let mf = check_m(m)?;
    let s = (PI / mf).sin();
    check_r(r, s, true)?;
    Ok(r * r * r * (3.0 * (2.0 * PI / mf).cos() + 5.0) / (24.0 * s))
}

/// Error contributed by all m side lists:
/// (1/(3(k-1)^2)) csc(pi/m) (sin(pi/m) - r)^3. Requires k >= 2.
pub fn side_error(m: u32, k: u32, r: f64) -> Result<f64> {
    let mf = check_m(m)?;
    if k < 2 {
        return Err(Error::invalid("side error is defined for k >= 2"));
    }
    let s = (PI / mf).sin();
    check_r(r, s, true)?;
    let w = s - r;
    Ok(w * w * w / (3.0 * ((k - 1) as f64).powi(2) * s))
}

/// Total error of the symmetric configuration as a function of r:
/// (1/24) csc(pi/m) ( r^3 (3 cos(2 pi/m) + 5) + (8/(k-1)^2)(sin(pi/m) - r)^3 ).
///
/// For k = 1 the only admissible radius is l/2, where the side term is zero.
pub fn total_error_of_r(m: u32, k: u32, r: f64) -> Result<f64> {
    let mf = check_m(m)?;
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let s = (PI / mf).sin();
    check_r(r, s, true)?;
    if k == 1 {
        if (r - s).abs() > 1e-12 {
            return Err(Error::invalid(
                "for k = 1 the vertex radius must equal l/2",
            ));
        }
        return corner_error(m, r);
    }
    let w = s - r;
    let kk = ((k - 1) as f64).powi(2);
    Ok((r * r * r * (3.0 * (2.0 * PI / mf).cos() + 5.0) + 8.0 / kk * w * w * w) / (24.0 * s))
}

/// Exact quantization error for n = m*k means, with its corner/side split
/// evaluated at the optimal vertex radius.
pub fn optimal_error(m: u32, k: u32) -> Result<DistortionReport> {
    let mf = check_m(m)?;
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let s = (PI / mf).sin();
    let c2 = (2.0 * PI / mf).cos();
    let d = (6.0 * c2 + 10.0).sqrt();
    let denom = k as f64 * d - d + 4.0;
    let total = 2.0 * s * s * (3.0 * c2 + 5.0) / (3.0 * denom * denom);
    let r = vertex_radius(m, k)?;
    let corner = corner_error(m, r)?;
    let side = if k >= 2 { side_error(m, k, r)? } else { 0.0 };
    Ok(DistortionReport {
        total,
        corner_part: Some(corner),
        side_part: Some(side),
        method: ReportMethod::ClosedForm,
        params: ReportParams {
            m: Some(m),
            n: (m * k) as usize,
            k: Some(k),
            r: Some(r),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::squared_distance;

    #[test]
    fn vertex_radius_values() {
        assert!((vertex_radius(6, 1).unwrap() - 0.5).abs() < 1e-15);
        let r62 = 2.0 / (13.0_f64.sqrt() + 4.0);
        assert!((vertex_radius(6, 2).unwrap() - r62).abs() < 1e-15);
        assert!((r62 - 0.26296581635734047).abs() < 1e-15);
        let r42 = 2.0 * 2.0_f64.sqrt() / (2.0 * (2.5_f64).sqrt() + 4.0);
        assert!((vertex_radius(4, 2).unwrap() - r42).abs() < 1e-15);
        assert!((r42 - 0.39490609816426693).abs() < 1e-15);
    }

    #[test]
    fn vertex_radius_stays_in_range() {
        for m in [3u32, 4, 7, 100] {
            let half = (PI / m as f64).sin();
            for k in 1..=20 {
                let r = vertex_radius(m, k).unwrap();
                assert!(r > 0.0 && r <= half);
            }
        }
    }

    #[test]
    fn corner_points_examples() {
        let hex = RegularPolygon::new(6).unwrap();
        let r = vertex_radius(6, 2).unwrap();
        let corners = corner_points(&hex, r).unwrap();
        assert!((corners[0].x - 0.93425854591066488).abs() < 1e-15);
        assert!(corners[0].y.abs() < 1e-15);

        // zero trim collapses to the vertices
        let sq = RegularPolygon::new(4).unwrap();
        let near = corner_points(&sq, 1e-12).unwrap();
        for (a, v) in near.iter().zip(sq.vertices()) {
            assert!(squared_distance(*a, *v).sqrt() < 1e-11);
        }

        let tri = RegularPolygon::new(3).unwrap();
        let half = tri.side_length() / 2.0;
        let c = corner_points(&tri, half).unwrap();
        assert!((c[0].x - 0.625).abs() < 1e-12);
        assert!(c[0].y.abs() < 1e-15);
    }

    #[test]
    fn corner_points_radial_collapse() {
        // The j >= 2 expression equals (1 - (r/2) sin(pi/m)) * vertex_j,
        // and reproduces a_1 when evaluated at j = 1.
        for m in [3u32, 4, 6, 11] {
            let p = RegularPolygon::new(m).unwrap();
            for k in [1u32, 2, 5] {
                let r = vertex_radius(m, k).unwrap();
                let scale = 1.0 - 0.5 * r * (PI / m as f64).sin();
                for (j, a) in corner_points(&p, r).unwrap().iter().enumerate() {
                    let v = p.vertex(j as u32 + 1);
                    assert!((a.x - scale * v.x).abs() < 1e-12);
                    assert!((a.y - scale * v.y).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn side_points_examples() {
        let hex = RegularPolygon::new(6).unwrap();
        let lists = side_points(&hex, 2, 0.2).unwrap();
        for (j, list) in lists.iter().enumerate() {
            assert_eq!(list.len(), 1);
            let mid = hex.side_point(j as u32 + 1, 0.5).unwrap();
            assert!(squared_distance(list[0], mid).sqrt() < 1e-14);
        }

        let empty = side_points(&hex, 1, 0.5).unwrap();
        assert_eq!(empty.len(), 6);
        assert!(empty.iter().all(|l| l.is_empty()));

        let sq = RegularPolygon::new(4).unwrap();
        let r = vertex_radius(4, 3).unwrap();
        let l = sq.side_length();
        let lists = side_points(&sq, 3, r).unwrap();
        for (j, list) in lists.iter().enumerate() {
            assert_eq!(list.len(), 2);
            for (i, frac) in [0.25, 0.75].iter().enumerate() {
                let t = r / l + frac * (1.0 - 2.0 * r / l);
                let expected = sq.side_point(j as u32 + 1, t).unwrap();
                assert!(squared_distance(list[i], expected).sqrt() < 1e-14);
            }
        }
    }

    #[test]
    fn optimal_mk_set_structure() {
        let q = optimal_mk_set(6, 2).unwrap();
        assert_eq!(q.len(), 12);
        assert!(!q.has_duplicates());
        for a in &q.points[..6] {
            assert!((a.norm() - 0.93425854591066488).abs() < 1e-12);
        }
        for s in &q.points[6..] {
            // side midpoints of the hexagon sit at apothem cos(pi/6)
            assert!((s.norm() - (PI / 6.0).cos()).abs() < 1e-12);
        }

        let tri = optimal_mk_set(3, 1).unwrap();
        assert_eq!(tri.len(), 3);
        assert!((tri.points[0].x - 0.625).abs() < 1e-12);
    }

    #[test]
    fn optimal_set_rotation_and_mirror_invariance() {
        for (m, k) in [(3u32, 1u32), (4, 2), (5, 3), (6, 2)] {
            let q = optimal_mk_set(m, k).unwrap();
            let theta = 2.0 * PI / m as f64;
            let (c, s) = (theta.cos(), theta.sin());
            for p in &q.points {
                let rot = Point2::new(c * p.x - s * p.y, s * p.x + c * p.y);
                let mirror = Point2::new(p.x, -p.y);
                for image in [rot, mirror] {
                    let nearest = q
                        .points
                        .iter()
                        .map(|x| squared_distance(*x, image).sqrt())
                        .fold(f64::INFINITY, f64::min);
                    assert!(nearest < 1e-9);
                }
            }
        }
    }

    #[test]
    fn corner_error_values() {
        assert_eq!(corner_error(5, 0.0).unwrap(), 0.0);
        let r = vertex_radius(6, 2).unwrap();
        assert!((corner_error(6, r).unwrap() - 0.0098498587290924760).abs() < 1e-15);
        let e = corner_error(4, 0.1).unwrap();
        assert!((e - 0.001 * 5.0 * 2.0_f64.sqrt() / 24.0).abs() < 1e-15);
        assert!((e - 2.946e-4).abs() < 1e-6);
    }

    #[test]
    fn side_error_values() {
        let half = (PI / 5.0).sin();
        assert_eq!(side_error(5, 3, half).unwrap(), 0.0);
        let r = vertex_radius(6, 2).unwrap();
        let e = side_error(6, 2, r).unwrap();
        assert!((e - 0.0088785426759548714).abs() < 1e-15);
        // (k-1)^2 scaling at fixed r
        let e3 = side_error(6, 3, r).unwrap();
        assert!((e3 - e / 4.0).abs() < 1e-15);
        assert!(side_error(6, 1, 0.3).is_err());
    }

    #[test]
    fn total_error_decomposition_and_minimum() {
        let r = vertex_radius(6, 2).unwrap();
        let total = total_error_of_r(6, 2, r).unwrap();
        let sum = corner_error(6, r).unwrap() + side_error(6, 2, r).unwrap();
        assert!((total - sum).abs() <= 1e-14 * total);
        assert!((total - 0.018728401405047347).abs() < 1e-15);

        // side term vanishes at r = l/2
        let at_half = total_error_of_r(6, 2, 0.5).unwrap();
        assert!((at_half - corner_error(6, 0.5).unwrap()).abs() < 1e-16);
        assert!((at_half - 6.5 / 96.0).abs() < 1e-15);

        // r* is the minimizer
        for dr in [-0.05, 0.05] {
            assert!(total_error_of_r(6, 2, r + dr).unwrap() > total);
        }
    }

    #[test]
    fn total_error_k1_limit() {
        let half = (PI / 6.0).sin();
        let v = total_error_of_r(6, 1, half).unwrap();
        assert!((v - corner_error(6, half).unwrap()).abs() < 1e-16);
        assert!(total_error_of_r(6, 1, 0.3).is_err());
    }

    #[test]
    fn optimal_error_values() {
        let rep = optimal_error(6, 2).unwrap();
        let expected = 3.25 / (3.0 * (13.0_f64.sqrt() + 4.0).powi(2));
        assert!((rep.total - expected).abs() < 1e-15);
        assert!((rep.total - 0.018728401405047347).abs() < 1e-15);
        let sum = rep.corner_part.unwrap() + rep.side_part.unwrap();
        assert!((sum - rep.total).abs() <= 1e-12 * rep.total);

        let rep1 = optimal_error(6, 1).unwrap();
        assert!((rep1.total - 6.5 / 96.0).abs() < 1e-15);
        assert_eq!(rep1.side_part, Some(0.0));

        // closed form at the optimum equals total_error_of_r there
        for (m, k) in [(3u32, 2u32), (4, 5), (9, 3)] {
            let r = vertex_radius(m, k).unwrap();
            let direct = total_error_of_r(m, k, r).unwrap();
            let rep = optimal_error(m, k).unwrap();
            assert!((direct - rep.total).abs() <= 1e-12 * rep.total);
        }
    }

    #[test]
    fn optimal_error_decreases_in_k() {
        let mut prev = f64::INFINITY;
        for k in 1..=50 {
            let v = optimal_error(6, k).unwrap().total;
            assert!(v > 0.0 && v < prev);
            prev = v;
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(vertex_radius(2, 2).is_err());
        assert!(vertex_radius(6, 0).is_err());
        assert!(optimal_mk_set(1, 1).is_err());
        assert!(corner_error(6, -0.1).is_err());
        assert!(corner_error(6, 1.0).is_err());
        let hex = RegularPolygon::new(6).unwrap();
        assert!(corner_points(&hex, 0.0).is_err());
        assert!(corner_points(&hex, 0.6).is_err());
        assert!(side_points(&hex, 0, 0.2).is_err());
        assert!(total_error_of_r(6, 2, f64::NAN).is_err());
    }
}
