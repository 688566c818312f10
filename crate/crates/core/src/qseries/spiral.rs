use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::pochhammer::check_base;

/// Position of a point relative to the q-spiral `[λ;q] = λq^ℤ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralLocation {
    pub lambda: Complex64,
    pub k_nearest: i64,
    /// `min |Log(x/λ) - k·Log q - 2πim|` over `k, m ∈ ℤ`; unchanged by `x ↦ qx`.
    pub log_distance: f64,
}

/// Finds the spiral point `λq^k` closest to `x` in the log metric.
pub fn q_spiral_locate(lambda: Complex64, q: Complex64, x: Complex64) -> Result<SpiralLocation> {
    check_base(q)?;
    let zero = Complex64::new(0.0, 0.0);
    if x == zero || lambda == zero || q == zero {
        return Err(Error::ZeroArgument);
    }
    let lq = q.ln();
    let w = (x / lambda).ln();
    let a = lq.re; // < 0
    let k0 = (w.re / a).round() as i64;
    // a lattice point at distance d from w has |k - w.re/a| <= d/|a|, and
    // d never exceeds half the diagonal of the fundamental cell
    let reach = ((a / 2.0).powi(2) + PI * PI).sqrt() / a.abs() + 1.0;
    let reach = reach.min(1e6).ceil() as i64;
    let mut best = (k0, f64::INFINITY);
    for k in (k0 - reach)..=(k0 + reach) {
        let d = w - lq * k as f64;
        let m = (d.im / (2.0 * PI)).round();
        let dist = Complex64::new(d.re, d.im - 2.0 * PI * m).norm();
        if dist < best.1 {
            best = (k, dist);
        }
    }
    Ok(SpiralLocation {
        lambda,
        k_nearest: best.0,
        log_distance: best.1,
    })
}

/// Distance of `z` from the zero set `-q^ℤ` of `θ_q`.
pub fn theta_zero_distance(q: Complex64, z: Complex64) -> Result<SpiralLocation> {
    q_spiral_locate(Complex64::new(-1.0, 0.0), q, z)
}
