//! Static SVG rendering: polygon, unit circle, quantizer points and cell
//! breakpoint ticks, viewport [-1.1, 1.1]^2 mapped to a pixel square.

use std::fmt::Write;

use crate::geometry::{Point2, RegularPolygon};
use crate::oracle::BoundaryCell;
use crate::types::QuantizerSet;

const VIEW_HALF: f64 = 1.1;
const TICK_HALF: f64 = 0.025;

fn to_px(p: Point2, size: u32) -> (f64, f64) {
    let s = size as f64;
    (
        (p.x + VIEW_HALF) / (2.0 * VIEW_HALF) * s,
        (VIEW_HALF - p.y) / (2.0 * VIEW_HALF) * s,
    )
}

pub fn render_svg(
    p: &RegularPolygon,
    q: &QuantizerSet,
    cells: &[BoundaryCell],
    size: u32,
) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>"
    );

    // unit circle for context
    let (cx, cy) = to_px(Point2::new(0.0, 0.0), size);
    let radius = size as f64 / (2.0 * VIEW_HALF);
    let _ = writeln!(
        svg,
        "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{radius:.2}\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>"
    );

    // polygon boundary
    let mut pts = String::new();
    for v in p.vertices() {
        let (x, y) = to_px(*v, size);
        let _ = write!(pts, "{x:.2},{y:.2} ");
    }
    let _ = writeln!(
        svg,
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\"/>",
        pts.trim_end()
    );

    // cell breakpoint ticks, perpendicular to the side
    for cell in cells {
        for arc in &cell.arcs {
            for t in [arc.t_lo, arc.t_hi] {
                if t <= 1e-9 || t >= 1.0 - 1e-9 {
                    continue;
                }
                let a = p.vertex(arc.side);
                let b = p.vertex(arc.side + 1);
                let len = p.side_length();
                let (nx, ny) = (-(b.y - a.y) / len, (b.x - a.x) / len);
                let at = p.side_point_unchecked(arc.side, t);
                let from = Point2::new(at.x - TICK_HALF * nx, at.y - TICK_HALF * ny);
                let to = Point2::new(at.x + TICK_HALF * nx, at.y + TICK_HALF * ny);
                let (x1, y1) = to_px(from, size);
                let (x2, y2) = to_px(to, size);
                let _ = writeln!(
                    svg,
                    "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#2266cc\" stroke-width=\"1\"/>"
                );
            }
        }
    }

    // quantizer points
    for pt in &q.points {
        let (x, y) = to_px(*pt, size);
        let _ = writeln!(
            svg,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#cc3322\"/>"
        );
    }

    svg.push_str("</svg>\n");
    svg
}
