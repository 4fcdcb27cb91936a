//! The quantization coefficient (1/3) m^2 sin^2(pi/m), its derivative in m,
//! and convergence tables for n^2 V_n along n = m*k.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::MAX_SIDES;
use crate::polygon;

/// Quantization coefficient for the m-gon boundary: (1/3) m^2 sin^2(pi/m).
///
/// Equals 3 for the hexagon and increases towards the circle value pi^2/3.
pub fn quant_coefficient(m: u32) -> Result<f64> {
    if m < 3 {
        return Err(Error::invalid(format!("side count must be >= 3, got {m}")));
    }
    if m > MAX_SIDES {
        return Err(Error::invalid(format!(
            "side count {m} exceeds the supported maximum {MAX_SIDES}"
        )));
    }
    let mf = m as f64;
    let s = (PI / mf).sin();
    Ok(mf * mf * s * s / 3.0)
}

/// d/dm of the coefficient, treating m as continuous:
/// (2/3) sin(pi/m) (m sin(pi/m) - pi cos(pi/m)). Positive for all m >= 3.
pub fn coefficient_derivative(m: f64) -> Result<f64> {
    if !(m >= 3.0) || !m.is_finite() {
        return Err(Error::invalid(format!("m must be a finite real >= 3, got {m}")));
    }
    let s = (PI / m).sin();
    let c = (PI / m).cos();
    Ok(2.0 / 3.0 * s * (m * s - PI * c))
}

/// One row of a convergence table along n = m*k.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub n: u64,
    pub k: u32,
    pub vn: f64,
    /// n^2 * V_n
    pub scaled: f64,
    /// scaled minus the coefficient
    pub deviation: f64,
}

/// Evaluates n^2 V_n against the coefficient for each k, with n = m*k.
pub fn convergence_table(m: u32, k_values: &[u32]) -> Result<Vec<ConvergenceRow>> {
    let coefficient = quant_coefficient(m)?;
    k_values
        .iter()
        .map(|&k| {
            let vn = polygon::optimal_error(m, k)?.total;
            let n = m as u64 * k as u64;
            let scaled = (n as f64) * (n as f64) * vn;
            Ok(ConvergenceRow {
                n,
                k,
                vn,
                scaled,
                deviation: scaled - coefficient,
            })
        })
        .collect()
}
