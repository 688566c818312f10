//! The solution at infinity of the Hahn–Exton equation in `t = 1/x`,
//!
//! ```text
//! [σ_p² - {(p^ν + p^{-ν}) - p^{-2-ν}/t} σ_p + 1] z(t) = 0,
//! ```
//!
//! its connection to the two solutions at the origin, and the rewritten
//! form with p-elliptic coefficients `C±` and local solutions `J±`.
//!
//! The left-hand side of the connection formula is computed from the
//! numerical q-Laplace integral of the Borel image, never from the residue
//! sum that produced the right-hand side.

use num_complex::Complex64;

use crate::borel::{check_order, g_closed_form, q_laplace_numeric, resummed_terms, ContourSpec};
use crate::error::{Error, Result};
use crate::qseries::{phi11, q_spiral_locate, qpoch_inf, qpoch_multi, theta_scaled, SpiralLocation};
use crate::types::{cdiv, Nome, Residual, Tolerance};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn gate(anchor: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<SpiralLocation> {
    let s = q_spiral_locate(anchor, nome.p(), x)?;
    if s.log_distance < tol.spiral_gate {
        return Err(Error::SpiralError {
            log_distance: s.log_distance,
            k: s.k_nearest,
        });
    }
    Ok(s)
}

/// Location of `x` relative to the excluded spiral `[p^{ν+2}; p]`, on which
/// `θ_p(-p^{ν+2}/x)` vanishes.
pub fn excluded_spiral(nu: Complex64, nome: &Nome, x: Complex64) -> Result<SpiralLocation> {
    q_spiral_locate(nome.p_pow(nu + 2.0), nome.p(), x)
}

/// Left-hand side of the equation above applied to `z` at `t`.
pub fn b3_residual<F>(z: F, nu: Complex64, nome: &Nome, t: Complex64) -> Result<Residual>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let p = nome.p();
    let s = nome.p_pow(nu) + nome.p_pow(-nu);
    let coeff = s - nome.p_pow(-2.0 - nu) / t;
    Ok(Residual::from_terms(&[z(p * p * t)?, -coeff * z(p * t)?, z(t)?]))
}

/// The two right-hand terms of the connection formula at `x`:
///
/// ```text
/// 1/(p^{-2ν},p;p)_∞ · θ_p(-p^{2ν+2}/x)/θ_p(-p^{ν+2}/x) · ₁φ₁(0; p^{1+2ν}; p, x)
/// 1/(p^{2ν}, p;p)_∞ · θ_p(-p²/x)/θ_p(-p^{ν+2}/x)      · ₁φ₁(0; p^{1-2ν}; p, p^{-2ν}x)
/// ```
///
/// Theta quotients are formed on the log scale, so `|x|` may be tiny.
pub fn connection_rhs_terms(nu: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<[Complex64; 2]> {
    check_order(nu)?;
    if x == ZERO {
        return Err(Error::ZeroArgument);
    }
    gate(nome.p_pow(nu + 2.0), nome, x, tol)?;
    let t = 1.0 / x;
    let e = theta_scaled(nome.p(), -nome.p_pow(nu + 2.0) * t, tol)?;
    let [plus, minus] = resummed_terms(nu, nome, t, tol)?;
    Ok([plus.theta.ratio(&e)? * plus.coeff, minus.theta.ratio(&e)? * minus.coeff])
}

/// `z(t) = f(t) / θ_p(-p^{ν+2}t)` with `f` the residue-summed solution.
pub fn z_at_infinity(nu: Complex64, nome: &Nome, t: Complex64, tol: &Tolerance) -> Result<Complex64> {
    if t == ZERO {
        return Err(Error::ZeroArgument);
    }
    let [a, b] = connection_rhs_terms(nu, nome, 1.0 / t, tol)?;
    Ok(a + b)
}

/// `(p^{1/2}, p^{1/2}; p)_∞`.
pub(crate) fn half_norm(nome: &Nome, tol: &Tolerance) -> Result<Complex64> {
    let s = qpoch_inf(nome.p_pow(Complex64::new(0.5, 0.0)), nome.p(), tol)?.value;
    Ok(s * s)
}

/// `h_ν(t; p) = (p^{1/2}, p^{1/2}; p)_∞ z(t)`.
pub fn h_nu(nu: Complex64, nome: &Nome, t: Complex64, tol: &Tolerance) -> Result<Complex64> {
    Ok(half_norm(nome, tol)? * z_at_infinity(nu, nome, t, tol)?)
}

/// Both sides of the connection formula at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionReport {
    pub point_x: Complex64,
    /// `z(1/x)` from the q-Laplace integral of the Borel image.
    pub lhs: Complex64,
    pub rhs_term_plus: Complex64,
    pub rhs_term_minus: Complex64,
    /// `|lhs - rhs| / max(|lhs|, |rhs₊|, |rhs₋|)`.
    pub residual_rel: f64,
    /// Position relative to `[p^{ν+2}; p]`.
    pub spiral: SpiralLocation,
    pub quadrature_nodes: usize,
}

/// Checks the connection formula at `x ∉ [p^{ν+2}; p]`.
pub fn connection_residual(nu: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<ConnectionReport> {
    check_order(nu)?;
    if x == ZERO {
        return Err(Error::ZeroArgument);
    }
    let spiral = gate(nome.p_pow(nu + 2.0), nome, x, tol)?;
    let t = 1.0 / x;
    let contour = ContourSpec::for_borel_image(nu, nome);
    let f = q_laplace_numeric(
        |tau| Ok(g_closed_form(nu, nome, tau, tol)?.value),
        nome,
        t,
        &contour,
        tol,
    )?;
    let e = theta_scaled(nome.p(), -nome.p_pow(nu + 2.0) * t, tol)?.value()?;
    let lhs = f.value / e;
    let [plus, minus] = connection_rhs_terms(nu, nome, x, tol)?;
    let scale = lhs.norm().max(plus.norm()).max(minus.norm()).max(f64::MIN_POSITIVE);
    Ok(ConnectionReport {
        point_x: x,
        lhs,
        rhs_term_plus: plus,
        rhs_term_minus: minus,
        residual_rel: (lhs - plus - minus).norm() / scale,
        spiral,
        quadrature_nodes: f.terms_used,
    })
}

/// `θ_p(λp^a/x) / θ_p(λ/x)`, refused on `[-λ; p]`.
fn lambda_ratio(a: Complex64, lambda: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<Complex64> {
    if x == ZERO || lambda == ZERO {
        return Err(Error::ZeroArgument);
    }
    gate(-lambda, nome, x, tol)?;
    let p = nome.p();
    theta_scaled(p, lambda * nome.p_pow(a) / x, tol)?.ratio(&theta_scaled(p, lambda / x, tol)?)
}

fn local_solution(
    nu: Complex64,
    lambda: Complex64,
    nome: &Nome,
    x: Complex64,
    series_arg: Complex64,
    norm_base: Complex64,
    tol: &Tolerance,
) -> Result<Complex64> {
    let p = nome.p();
    let pref = cdiv(qpoch_inf(norm_base, p, tol)?.value, qpoch_inf(p, p, tol)?.value);
    let ratio = lambda_ratio(nu, lambda, nome, x, tol)?;
    let series = phi11(nome.p_pow(1.0 + 2.0 * nu), p, series_arg, tol)?.value;
    Ok(pref * ratio * series)
}

/// `J⁺_{ν,λ}(x;p) = (p^{ν+1};p)_∞/(p;p)_∞ · θ_p(λp^ν/x)/θ_p(λ/x) · ₁φ₁(0; p^{1+2ν}; p, x)`.
pub fn j_plus(nu: Complex64, lambda: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<Complex64> {
    local_solution(nu, lambda, nome, x, x, nome.p_pow(nu + 1.0), tol)
}

/// `J⁻_{ν,λ}(x;p)`: as [`j_plus`] with series argument `p^{2ν}x`.
pub fn j_minus(nu: Complex64, lambda: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<Complex64> {
    local_solution(nu, lambda, nome, x, nome.p_pow(2.0 * nu) * x, nome.p_pow(nu + 1.0), tol)
}

/// `C⁺_ν(λ,t;p)` and `C⁻_ν(λ,t;p)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticCoeffPair {
    pub c_plus: Complex64,
    pub c_minus: Complex64,
    pub lambda: Complex64,
    pub t: Complex64,
}

/// ```text
/// C⁺ = (p^{1/2},p^{1/2};p)_∞/(p^{ν+1},p^{-2ν};p)_∞ · θ_p(-p^{2ν+2}t)/θ_p(-p^{ν+2}t) · θ_p(λt)/θ_p(λp^ν t)
/// C⁻ = (p^{1/2},p^{1/2};p)_∞/(p^{1-ν},p^{2ν};p)_∞  · θ_p(-p²t)/θ_p(-p^{ν+2}t)      · θ_p(λt)/θ_p(λp^{-ν}t)
/// ```
///
/// Both are invariant under `t ↦ pt`. Under `λ ↦ pλ`, `C⁺` picks up `p^ν`
/// and `C⁻` picks up `p^{-ν}`.
pub fn c_coeffs(
    nu: Complex64,
    lambda: Complex64,
    nome: &Nome,
    t: Complex64,
    tol: &Tolerance,
) -> Result<EllipticCoeffPair> {
    check_order(nu)?;
    if t == ZERO || lambda == ZERO {
        return Err(Error::ZeroArgument);
    }
    let p = nome.p();
    let minus_one = Complex64::new(-1.0, 0.0);
    // denominators θ_p(-p^{ν+2}t), θ_p(λp^{±ν}t) must stay off -p^ℤ
    gate(minus_one / (-nome.p_pow(nu + 2.0)), nome, t, tol)?;
    gate(minus_one / (lambda * nome.p_pow(nu)), nome, t, tol)?;
    gate(minus_one / (lambda * nome.p_pow(-nu)), nome, t, tol)?;
    let th = |z: Complex64| theta_scaled(p, z, tol);
    let norm = half_norm(nome, tol)?;
    let e = th(-nome.p_pow(nu + 2.0) * t)?;
    let lt = th(lambda * t)?;
    let plus_pref = cdiv(
        norm,
        qpoch_multi(&[nome.p_pow(nu + 1.0), nome.p_pow(-2.0 * nu)], p, tol)?.value,
    );
    let minus_pref = cdiv(
        norm,
        qpoch_multi(&[nome.p_pow(1.0 - nu), nome.p_pow(2.0 * nu)], p, tol)?.value,
    );
    let c_plus =
        plus_pref * th(-nome.p_pow(2.0 * nu + 2.0) * t)?.ratio(&e)? * lt.ratio(&th(lambda * nome.p_pow(nu) * t)?)?;
    let c_minus = minus_pref * th(-nome.p_powi(2) * t)?.ratio(&e)? * lt.ratio(&th(lambda * nome.p_pow(-nu) * t)?)?;
    Ok(EllipticCoeffPair {
        c_plus,
        c_minus,
        lambda,
        t,
    })
}

/// Which prefactor of `J±` made the rewritten formula hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `(p^{ν+1}; p)_∞ / (p; p)_∞` as in the definition of `J±`.
    Displayed,
    /// `(p^{2ν+1}; p)_∞ / (p; p)_∞`.
    Alternative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewrittenReport {
    pub lhs: Complex64,
    pub coeffs: EllipticCoeffPair,
    pub j_plus: Complex64,
    pub j_minus: Complex64,
    pub residual: Residual,
    pub normalization: Normalization,
    /// Relative residual under the displayed normalization when the
    /// alternative one had to be used.
    pub displayed_residual: Option<f64>,
}

/// Relative residuals above this count as a systematic mismatch.
const MISMATCH: f64 = 1e-6;

/// `h_ν(1/x;p) - C⁺(λ,1/x) J⁺_{ν,λ}(x) - C⁻(λ,1/x) J⁻_{-ν,λ}(x)`.
///
/// Should the displayed normalization of `J±` fail, the alternative one
/// is tried and the report says which one holds.
pub fn rewritten_connection_residual(
    nu: Complex64,
    lambda: Complex64,
    nome: &Nome,
    x: Complex64,
    tol: &Tolerance,
) -> Result<RewrittenReport> {
    if x == ZERO {
        return Err(Error::ZeroArgument);
    }
    let t = 1.0 / x;
    let lhs = h_nu(nu, nome, t, tol)?;
    let coeffs = c_coeffs(nu, lambda, nome, t, tol)?;
    let jp = j_plus(nu, lambda, nome, x, tol)?;
    let jm = j_minus(-nu, lambda, nome, x, tol)?;
    let residual = Residual::from_terms(&[lhs, -coeffs.c_plus * jp, -coeffs.c_minus * jm]);
    if residual.relative() <= MISMATCH {
        return Ok(RewrittenReport {
            lhs,
            coeffs,
            j_plus: jp,
            j_minus: jm,
            residual,
            normalization: Normalization::Displayed,
            displayed_residual: None,
        });
    }
    let jp_alt = local_solution(nu, lambda, nome, x, x, nome.p_pow(2.0 * nu + 1.0), tol)?;
    let jm_alt = local_solution(
        -nu,
        lambda,
        nome,
        x,
        nome.p_pow(-2.0 * nu) * x,
        nome.p_pow(1.0 - 2.0 * nu),
        tol,
    )?;
    let alt = Residual::from_terms(&[lhs, -coeffs.c_plus * jp_alt, -coeffs.c_minus * jm_alt]);
    if alt.relative() < residual.relative() {
        Ok(RewrittenReport {
            lhs,
            coeffs,
            j_plus: jp_alt,
            j_minus: jm_alt,
            residual: alt,
            normalization: Normalization::Alternative,
            displayed_residual: Some(residual.relative()),
        })
    } else {
        Ok(RewrittenReport {
            lhs,
            coeffs,
            j_plus: jp,
            j_minus: jm,
            residual,
            normalization: Normalization::Displayed,
            displayed_residual: None,
        })
    }
}

/// `u(px) - p^ν u(x)` for `u(x) = θ_p(λp^ν/x) / θ_p(λ/x)`.
pub fn theta_ratio_qde_residual(
    nu: Complex64,
    lambda: Complex64,
    nome: &Nome,
    x: Complex64,
    tol: &Tolerance,
) -> Result<Residual> {
    let shifted = lambda_ratio(nu, lambda, nome, nome.p() * x, tol)?;
    let here = lambda_ratio(nu, lambda, nome, x, tol)?;
    Ok(Residual::from_terms(&[shifted, -nome.p_pow(nu) * here]))
}
