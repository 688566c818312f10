use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::{q_spiral_locate, qpoch_inf};
use crate::types::{Nome, Residual, SeriesValue, Tolerance};

/// Log-distance below which `τ` is taken to sit on a pole of `g`.
const POLE_GATE: f64 = 1e-10;

/// Factors `A = p^{2ν+2}` and `B = p²` of `g(pτ) = (1+Aτ)(1+Bτ) g(τ)`.
pub(crate) fn image_factors(nu: Complex64, nome: &Nome) -> (Complex64, Complex64) {
    (nome.p_pow(2.0 * nu + 2.0), nome.p_powi(2))
}

/// `g(τ) = 1 / ((-p^{2ν+2}τ; p)_∞ (-p²τ; p)_∞)`, the Borel image of the
/// formal solution at infinity. Its poles are `-p^{-2ν-2-k}` and `-p^{-2-k}`
/// for `k ≥ 0`; hitting one yields `PoleError { index: k }`.
pub fn g_closed_form(nu: Complex64, nome: &Nome, tau: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    let p = nome.p();
    let (a, b) = image_factors(nu, nome);
    if tau != Complex64::new(0.0, 0.0) {
        for anchor in [-1.0 / a, -1.0 / b] {
            let s = q_spiral_locate(anchor, p, tau)?;
            if s.k_nearest <= 0 && s.log_distance < POLE_GATE {
                return Err(Error::PoleError { index: -s.k_nearest });
            }
        }
    }
    let fa = qpoch_inf(-a * tau, p, tol)?;
    let fb = qpoch_inf(-b * tau, p, tol)?;
    let den = fa.value * fb.value;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::PoleError { index: 0 });
    }
    let value = 1.0 / den;
    let rel = fa.tail_bound / fa.value.norm() + fb.tail_bound / fb.value.norm();
    Ok(SeriesValue {
        value,
        terms_used: fa.terms_used + fb.terms_used,
        tail_bound: value.norm() * rel,
    })
}

/// `g(pτ) - (1 + p^{2ν+2}τ)(1 + p²τ) g(τ)`.
pub fn g_recurrence_residual(nu: Complex64, nome: &Nome, tau: Complex64, tol: &Tolerance) -> Result<Residual> {
    let (a, b) = image_factors(nu, nome);
    let shifted = g_closed_form(nu, nome, nome.p() * tau, tol)?.value;
    let here = g_closed_form(nu, nome, tau, tol)?.value;
    Ok(Residual::from_terms(&[
        shifted,
        -(1.0 + a * tau) * (1.0 + b * tau) * here,
    ]))
}
