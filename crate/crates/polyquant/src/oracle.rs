//! Independent numerical machinery that cross-checks the closed forms:
//! boundary Voronoi partitioning via bisector root-finding, Gauss-Legendre
//! quadrature of the distortion integral, Lloyd iteration driven by the
//! centroid condition, and golden-section minimization over the vertex
//! radius.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{squared_distance, Point2, RegularPolygon};
use crate::polygon;
use crate::types::{DistortionReport, Method, QuantizerSet, ReportMethod, ReportParams, SetMeta};

/// Uniform parameters scanned per side when locating cell breakpoints.
pub const SCAN_SAMPLES: usize = 4096;
/// Parameter width to which each breakpoint is bisected.
const BREAKPOINT_TOL: f64 = 1e-12;

/// A parameter interval on one side (1-based side index).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryArc {
    pub side: u32,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl BoundaryArc {
    pub fn param_length(&self) -> f64 {
        self.t_hi - self.t_lo
    }
}

/// The boundary Voronoi cell of one quantizer point.
#[derive(Debug, Clone)]
pub struct BoundaryCell {
    pub owner_index: usize,
    pub arcs: Vec<BoundaryArc>,
}

fn nearest_index(points: &[Point2], x: Point2) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        let d = squared_distance(*p, x);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Bisects the sign change of rho(M_j(t), a) - rho(M_j(t), b) on [lo, hi],
/// with the invariant that a owns lo and b owns hi.
fn bisect_breakpoint(p: &RegularPolygon, side: u32, mut lo: f64, mut hi: f64, a: Point2, b: Point2) -> f64 {
    while hi - lo > BREAKPOINT_TOL {
        let mid = 0.5 * (lo + hi);
        let x = p.side_point_unchecked(side, mid);
        if squared_distance(x, a) - squared_distance(x, b) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_quantizer(q: &QuantizerSet) -> Result<()> {
    if q.is_empty() {
        return Err(Error::invalid("quantizer set is empty"));
    }
    if q.points.iter().any(|p| !p.is_finite()) {
        return Err(Error::invalid("quantizer set contains non-finite points"));
    }
    if q.has_duplicates() {
        return Err(Error::invalid("quantizer set contains duplicate points"));
    }
    Ok(())
}

/// Assigns every boundary parameter to its nearest quantizer point.
///
/// Each side is scanned at `SCAN_SAMPLES` uniform parameters for owner
/// changes; each change is then bisected on the canonical bisector equation.
/// Ties go to the lower owner index. Returns one cell per point, in index
/// order; a cell may hold no arcs.
pub fn voronoi_cells_on_boundary(
    p: &RegularPolygon,
    q: &QuantizerSet,
) -> Result<Vec<BoundaryCell>> {
    check_quantizer(q)?;
    let mut cells: Vec<BoundaryCell> = (0..q.len())
        .map(|owner_index| BoundaryCell {
            owner_index,
            arcs: Vec::new(),
        })
        .collect();

    let step = 1.0 / SCAN_SAMPLES as f64;
    let mut owners = vec![0usize; SCAN_SAMPLES + 1];
    for side in 1..=p.sides() {
        for (i, owner) in owners.iter_mut().enumerate() {
            *owner = nearest_index(&q.points, p.side_point_unchecked(side, i as f64 * step));
        }
        let mut cuts = vec![0.0];
        for i in 0..SCAN_SAMPLES {
            if owners[i] != owners[i + 1] {
                cuts.push(bisect_breakpoint(
                    p,
                    side,
                    i as f64 * step,
                    (i + 1) as f64 * step,
                    q.points[owners[i]],
                    q.points[owners[i + 1]],
                ));
            }
        }
        cuts.push(1.0);
        for pair in cuts.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            if hi <= lo {
                continue;
            }
            let owner = nearest_index(&q.points, p.side_point_unchecked(side, 0.5 * (lo + hi)));
            let arcs = &mut cells[owner].arcs;
            match arcs.last_mut() {
                Some(last) if last.side == side && last.t_hi == lo => last.t_hi = hi,
                _ => arcs.push(BoundaryArc {
                    side,
                    t_lo: lo,
                    t_hi: hi,
                }),
            }
        }
    }
    Ok(cells)
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (pn, dpn) = legendre_with_derivative(n, x);
            let dx = pn / dpn;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dpn) = legendre_with_derivative(n, x);
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dpn * dpn));
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn distortion_from_cells(
    p: &RegularPolygon,
    q: &QuantizerSet,
    cells: &[BoundaryCell],
    nodes: &[f64],
    weights: &[f64],
) -> f64 {
    let inv_m = 1.0 / p.sides() as f64;
    let mut total = 0.0;
    for cell in cells {
        let owner = q.points[cell.owner_index];
        for arc in &cell.arcs {
            let mid = 0.5 * (arc.t_lo + arc.t_hi);
            let half = 0.5 * arc.param_length();
            let mut sum = 0.0;
            for (x, w) in nodes.iter().zip(weights) {
                let pt = p.side_point_unchecked(arc.side, mid + half * x);
                sum += w * squared_distance(pt, owner);
            }
            total += inv_m * half * sum;
        }
    }
    total
}

/// Distortion of a quantizer set by the definition: sum over cells of
/// (1/m) * integral of rho(M_j(t), owner) dt, via Gauss-Legendre quadrature
/// per arc. The integrand is degree 2 in t on each arc, so any order >= 2
/// is exact up to round-off.
pub fn distortion_quadrature(
    p: &RegularPolygon,
    q: &QuantizerSet,
    nodes_per_arc: usize,
) -> Result<DistortionReport> {
    if nodes_per_arc < 2 {
        return Err(Error::invalid("quadrature needs at least 2 nodes per arc"));
    }
    let cells = voronoi_cells_on_boundary(p, q)?;
    let (nodes, weights) = gauss_legendre(nodes_per_arc);
    let total = distortion_from_cells(p, q, &cells, &nodes, &weights);
    Ok(DistortionReport {
        total,
        corner_part: None,
        side_part: None,
        method: ReportMethod::Quadrature,
        params: ReportParams {
            m: Some(p.sides()),
            n: q.len(),
            k: q.meta.k,
            r: q.meta.r,
        },
    })
}

fn centroids_from_cells(
    p: &RegularPolygon,
    q: &QuantizerSet,
    cells: &[BoundaryCell],
) -> (Vec<Point2>, Vec<usize>) {
    let inv_m = 1.0 / p.sides() as f64;
    let mut next = q.points.clone();
    let mut frozen = Vec::new();
    for cell in cells {
        let mut mass = 0.0;
        let mut mx = 0.0;
        let mut my = 0.0;
        for arc in &cell.arcs {
            // M_j is affine in t, so the arc integral of M_j equals the
            // arc midpoint times the parameter length.
            let len = arc.param_length();
            let mid = p.side_point_unchecked(arc.side, 0.5 * (arc.t_lo + arc.t_hi));
            mass += inv_m * len;
            mx += inv_m * len * mid.x;
            my += inv_m * len * mid.y;
        }
        if mass > 0.0 {
            next[cell.owner_index] = Point2::new(mx / mass, my / mass);
        } else {
            frozen.push(cell.owner_index);
        }
    }
    (next, frozen)
}

/// One Lloyd step: moves each point to the conditional mean of the boundary
/// measure over its cell. Points with empty cells are left in place; their
/// indices are reported alongside the new set.
pub fn lloyd_step_flagged(
    p: &RegularPolygon,
    q: &QuantizerSet,
) -> Result<(QuantizerSet, Vec<usize>)> {
    let cells = voronoi_cells_on_boundary(p, q)?;
    let (points, frozen) = centroids_from_cells(p, q, &cells);
    let n = points.len();
    Ok((
        QuantizerSet {
            points,
            meta: SetMeta {
                m: Some(p.sides()),
                n,
                k: q.meta.k,
                r: None,
                method: Method::Lloyd,
            },
        },
        frozen,
    ))
}

/// One Lloyd step, discarding the empty-cell flags.
pub fn lloyd_step(p: &RegularPolygon, q: &QuantizerSet) -> Result<QuantizerSet> {
    Ok(lloyd_step_flagged(p, q)?.0)
}

/// Initialization for `lloyd_solve`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LloydInit {
    /// Start from the closed-form optimal set (n must be a multiple of m).
    ClosedForm,
    /// Closed-form set with per-coordinate uniform noise in [-magnitude, magnitude].
    Perturbed { magnitude: f64, seed: u64 },
    /// n points drawn uniformly on the boundary by arc length.
    Random { seed: u64 },
}

#[derive(Debug, Clone)]
pub struct LloydState {
    pub points: QuantizerSet,
    pub iterations: usize,
    /// Largest point displacement in the last step.
    pub max_move: f64,
    pub distortion: f64,
    pub converged: bool,
    /// Indices whose cell was empty in the last step.
    pub frozen: Vec<usize>,
}

fn initial_set(p: &RegularPolygon, n: usize, init: LloydInit) -> Result<QuantizerSet> {
    let m = p.sides();
    match init {
        LloydInit::ClosedForm | LloydInit::Perturbed { .. } => {
            if n % m as usize != 0 || n == 0 {
                return Err(Error::invalid(format!(
                    "closed-form init needs n to be a positive multiple of m = {m}, got n = {n}"
                )));
            }
            let k = (n / m as usize) as u32;
            let mut q = polygon::optimal_mk_set(m, k)?;
            if let LloydInit::Perturbed { magnitude, seed } = init {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for pt in &mut q.points {
                    pt.x += rng.gen_range(-magnitude..=magnitude);
                    pt.y += rng.gen_range(-magnitude..=magnitude);
                }
            }
            Ok(q)
        }
        LloydInit::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut points: Vec<Point2> = Vec::with_capacity(n);
            while points.len() < n {
                let side = rng.gen_range(1..=m);
                let t: f64 = rng.gen_range(0.0..1.0);
                let pt = p.side_point_unchecked(side, t);
                if points.iter().any(|q| q.x == pt.x && q.y == pt.y) {
                    continue;
                }
                points.push(pt);
            }
            let mut q = QuantizerSet::manual(points);
            q.meta.m = Some(m);
            Ok(q)
        }
    }
}

/// Iterates Lloyd steps until the largest point displacement drops below
/// `tol` or `max_iter` is reached. Deterministic given the init and seed.
pub fn lloyd_solve(
    p: &RegularPolygon,
    n: usize,
    init: LloydInit,
    tol: f64,
    max_iter: usize,
) -> Result<LloydState> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let (nodes, weights) = gauss_legendre(8);
    let mut q = initial_set(p, n, init)?;
    let mut iterations = 0;
    let mut max_move = f64::INFINITY;
    let mut frozen = Vec::new();
    let mut distortion = {
        let cells = voronoi_cells_on_boundary(p, &q)?;
        distortion_from_cells(p, &q, &cells, &nodes, &weights)
    };
    while iterations < max_iter && max_move >= tol {
        let cells = voronoi_cells_on_boundary(p, &q)?;
        let (points, fr) = centroids_from_cells(p, &q, &cells);
        max_move = q
            .points
            .iter()
            .zip(&points)
            .map(|(a, b)| squared_distance(*a, *b).sqrt())
            .fold(0.0, f64::max);
        q.points = points;
        q.meta.method = Method::Lloyd;
        q.meta.r = None;
        frozen = fr;
        iterations += 1;
        let cells = voronoi_cells_on_boundary(p, &q)?;
        distortion = distortion_from_cells(p, &q, &cells, &nodes, &weights);
    }
    Ok(LloydState {
        converged: max_move < tol,
        points: q,
        iterations,
        max_move,
        distortion,
        frozen,
    })
}

/// Minimizes `total_error_of_r(m, k, .)` over [0, l/2] by golden-section
/// search; returns the midpoint of the final bracket of width < tol.
pub fn minimize_over_r(m: u32, k: u32, tol: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid("minimize_over_r needs k >= 2"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let p = RegularPolygon::new(m)?;
    let mut a = 0.0;
    let mut b = p.side_length() / 2.0;
    let f = |r: f64| polygon::total_error_of_r(m, k, r).expect("r stays inside [0, l/2]");

    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    Ok(0.5 * (a + b))
}
