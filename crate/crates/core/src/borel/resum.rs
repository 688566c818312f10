use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::{
    is_integer, phi11, q_spiral_locate, qpoch_finite, qpoch_inf, qpoch_multi, theta_scaled, ScaledValue,
};
use crate::types::{cdiv, Nome, Residual, SeriesValue, Tolerance};

/// One term `θ_p(a t) · c` of the residue sum, with the theta factor kept
/// on a log scale.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ResidueTerm {
    pub theta: ScaledValue,
    pub coeff: Complex64,
}

pub(crate) fn check_order(nu: Complex64) -> Result<()> {
    if is_integer(2.0 * nu) {
        return Err(Error::IntegerOrderError);
    }
    Ok(())
}

/// The two terms of
///
/// ```text
/// f(t) = θ_p(-p^{2ν+2}t) / (p^{-2ν}, p; p)_∞ · ₁φ₁(0; p^{1+2ν}; p, x)
///      + θ_p(-p²t)      / (p^{2ν},  p; p)_∞ · ₁φ₁(0; p^{1-2ν}; p, p^{-2ν} x),   xt = 1.
/// ```
pub(crate) fn resummed_terms(nu: Complex64, nome: &Nome, t: Complex64, tol: &Tolerance) -> Result<[ResidueTerm; 2]> {
    check_order(nu)?;
    if t == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument);
    }
    let p = nome.p();
    let x = 1.0 / t;
    let plus_den = qpoch_multi(&[nome.p_pow(-2.0 * nu), p], p, tol)?.value;
    let minus_den = qpoch_multi(&[nome.p_pow(2.0 * nu), p], p, tol)?.value;
    let plus_series = phi11(nome.p_pow(1.0 + 2.0 * nu), p, x, tol)?.value;
    let minus_series = phi11(nome.p_pow(1.0 - 2.0 * nu), p, nome.p_pow(-2.0 * nu) * x, tol)?.value;
    Ok([
        ResidueTerm {
            theta: theta_scaled(p, -nome.p_pow(2.0 * nu + 2.0) * t, tol)?,
            coeff: cdiv(plus_series, plus_den),
        },
        ResidueTerm {
            theta: theta_scaled(p, -nome.p_powi(2) * t, tol)?,
            coeff: cdiv(minus_series, minus_den),
        },
    ])
}

/// The convergent function obtained by summing the residues of the
/// q-Laplace integral of the Borel image. `2ν ∈ ℤ` is excluded, since
/// one of `(p^{∓2ν}; p)_∞` vanishes and `₁φ₁` meets a denominator zero.
pub fn f_resummed(nu: Complex64, nome: &Nome, t: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    let terms = resummed_terms(nu, nome, t, tol)?;
    let mut value = Complex64::new(0.0, 0.0);
    for term in &terms {
        value += term.theta.value()? * term.coeff;
    }
    Ok(SeriesValue {
        value,
        terms_used: terms.iter().map(|t| t.theta.terms_used).sum(),
        tail_bound: 0.0,
    })
}

/// Closed form of `Res{1/((τ/λ; p)_∞ τ); τ = λp^{-k}}`:
/// `(-1)^{k+1} p^{k(k+1)/2} / ((p;p)_k (p;p)_∞)`, independent of `λ`.
pub fn residue_lemma_value(nome: &Nome, k: usize, tol: &Tolerance) -> Result<Complex64> {
    let p = nome.p();
    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
    let kk = k as i64;
    let num = nome.p_powi(kk * (kk + 1) / 2) * sign;
    Ok(num / (qpoch_finite(p, p, k) * qpoch_inf(p, p, tol)?.value))
}

/// `1/(λp^{-k}; p)_∞ - (-λ)^{-k} p^{k(k+1)/2} / ((λ; p)_∞ (p/λ; p)_k)`.
pub fn pochhammer_shift_identity_residual(
    lambda: Complex64,
    nome: &Nome,
    k: usize,
    tol: &Tolerance,
) -> Result<Residual> {
    let p = nome.p();
    let s = q_spiral_locate(Complex64::new(1.0, 0.0), p, lambda)?;
    if s.log_distance < 1e-12 {
        return Err(Error::SpiralError {
            log_distance: s.log_distance,
            k: s.k_nearest,
        });
    }
    let kk = k as i64;
    let lhs = 1.0 / qpoch_inf(lambda * nome.p_powi(-kk), p, tol)?.value;
    let rhs = (-lambda).powi(-(k as i32)) * nome.p_powi(kk * (kk + 1) / 2)
        / (qpoch_inf(lambda, p, tol)?.value * qpoch_finite(p / lambda, p, k));
    Ok(Residual::from_terms(&[lhs, -rhs]))
}
