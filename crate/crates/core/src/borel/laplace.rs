//! Numerical q-Laplace transform
//!
//! ```text
//! (L_p g)(t) = (1/2πi) ∮_{|τ|=r} g(τ) θ_p(t/τ) dτ/τ
//! ```
//!
//! by the trapezoid rule on the circle, which converges geometrically for
//! periodic analytic integrands.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::theta;
use crate::types::{Nome, SeriesValue, Tolerance};

/// Circle and node schedule for the trapezoid rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub radius: f64,
    /// Starting node count (a power of two, at least 16).
    pub nodes: usize,
    pub max_nodes: usize,
    /// Radius of the largest pole-free disc of the integrand `g`.
    pub r0: f64,
    /// Relative agreement of successive estimates that ends the doubling.
    pub agreement: f64,
}

impl ContourSpec {
    /// `r = 0.9 r₀` with `r₀ = min(1/|p^{2ν+2}|, 1/|p²|)`, 64 to 2^14 nodes.
    pub fn for_borel_image(nu: Complex64, nome: &Nome) -> Self {
        let r0 = (1.0 / nome.p_pow(2.0 * nu + 2.0).norm()).min(1.0 / nome.p_powi(2).norm());
        ContourSpec {
            radius: 0.9 * r0,
            nodes: 64,
            max_nodes: 1 << 14,
            r0,
            agreement: 1e-12,
        }
    }

    /// A circle of the given radius for an integrand without poles up to `r0`.
    pub fn with_radius(radius: f64, r0: f64) -> Self {
        ContourSpec {
            radius,
            nodes: 64,
            max_nodes: 1 << 14,
            r0,
            agreement: 1e-12,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || self.radius >= self.r0 {
            return Err(Error::ContourTooLarge {
                radius: self.radius,
                limit: self.r0,
            });
        }
        Ok(())
    }
}

/// Mean of `f` over the circle `|τ - center| = radius`, refined by node
/// doubling until two estimates agree. The result carries the node count in
/// `terms_used` and the last change in `tail_bound`.
pub fn circle_mean<F>(
    f: F,
    center: Complex64,
    radius: f64,
    start: usize,
    max_nodes: usize,
    agreement: f64,
) -> Result<SeriesValue>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let node = |j: usize, m: usize| center + Complex64::from_polar(radius, 2.0 * PI * j as f64 / m as f64);
    let mut m = start.max(16).next_power_of_two();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut max_abs: f64 = 0.0;
    for j in 0..m {
        let v = f(node(j, m))?;
        max_abs = max_abs.max(v.norm());
        sum += v;
    }
    let mut estimate = sum / m as f64;
    while m < max_nodes {
        let m2 = 2 * m;
        for j in (1..m2).step_by(2) {
            let v = f(node(j, m2))?;
            max_abs = max_abs.max(v.norm());
            sum += v;
        }
        let next = sum / m2 as f64;
        let change = (next - estimate).norm();
        m = m2;
        estimate = next;
        if change <= agreement * next.norm() + 64.0 * f64::EPSILON * max_abs {
            return Ok(SeriesValue {
                value: estimate,
                terms_used: m,
                tail_bound: change,
            });
        }
    }
    Err(Error::NonConvergent { nodes: m })
}

/// Trapezoid-rule q-Laplace transform of `g` at `t`.
pub fn q_laplace_numeric<F>(
    g: F,
    nome: &Nome,
    t: Complex64,
    contour: &ContourSpec,
    tol: &Tolerance,
) -> Result<SeriesValue>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    contour.validate()?;
    if t == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument);
    }
    let p = nome.p();
    let integrand = |tau: Complex64| Ok(g(tau)? * theta(p, t / tau, tol)?.value);
    circle_mean(
        integrand,
        Complex64::new(0.0, 0.0),
        contour.radius,
        contour.nodes,
        contour.max_nodes,
        contour.agreement,
    )
}

/// `(1/2πi) ∮ f(τ) dτ` around a small circle, i.e. the residue of `f` at
/// `center` when it is the only singularity inside.
pub fn circle_residue<F>(f: F, center: Complex64, radius: f64) -> Result<SeriesValue>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    circle_mean(|tau| Ok(f(tau)? * (tau - center)), center, radius, 64, 1 << 14, 1e-13)
}
