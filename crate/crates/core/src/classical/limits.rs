//! The `p → 1⁻` limit chain of the solution at infinity. Every scan takes
//! its grid from the caller; [`dyadic_grid`] gives the canonical one.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bessel::{bessel_j, f01, hankel, HankelKind};
use super::gamma::gamma;
use crate::borel::check_order;
use crate::connection::{h_nu, half_norm};
use crate::error::{Error, Result};
use crate::qbessel::{j_q_bessel, QBesselKind};
use crate::qseries::{is_integer, on_negative_axis, phi11, principal_power, qpoch_inf, qpoch_multi, theta_scaled};
use crate::types::{cdiv, Nome, Residual, Tolerance};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// One sample of a convergence scan; `abs_error = |value - target|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitScanRow {
    pub p: f64,
    pub value: Complex64,
    pub target: Complex64,
    pub abs_error: f64,
}

impl LimitScanRow {
    pub fn new(p: f64, value: Complex64, target: Complex64) -> Self {
        LimitScanRow {
            p,
            value,
            target,
            abs_error: (value - target).norm(),
        }
    }
}

/// `p = 1 - 2^{-k}` for `k = kmin..=kmax`.
pub fn dyadic_grid(kmin: u32, kmax: u32) -> Vec<f64> {
    (kmin..=kmax).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect()
}

fn scan<F>(grid: &[f64], target: Complex64, mut value: F) -> Result<Vec<LimitScanRow>>
where
    F: FnMut(&Nome, f64) -> Result<Complex64>,
{
    grid.iter()
        .map(|&p| {
            let nome = Nome::real(p)?;
            Ok(LimitScanRow::new(p, value(&nome, p)?, target))
        })
        .collect()
}

fn check_point(x: Complex64) -> Result<()> {
    if x == ZERO {
        return Err(Error::ZeroArgument);
    }
    if on_negative_axis(x) {
        return Err(Error::BranchError);
    }
    Ok(())
}

fn real_power(base: f64, a: Complex64) -> Complex64 {
    (a * base.ln()).exp()
}

/// `θ_p(num)/θ_p(den)` on the log scale.
fn ratio(nome: &Nome, num: Complex64, den: Complex64, tol: &Tolerance) -> Result<Complex64> {
    let p = nome.p();
    theta_scaled(p, num, tol)?.ratio(&theta_scaled(p, den, tol)?)
}

/// `(p^{1/2},p^{1/2};p)_∞ / (p^{-2ν},p;p)_∞ · (1-p)^{2ν}`, converging to
/// `Γ(-2ν)/Γ(1/2)² = -1/(sin(2νπ) Γ(2ν+1))`. Replacing `ν` by `-ν` gives the
/// companion factor of the second term.
fn gamma_factor(nu: Complex64, nome: &Nome, p: f64, tol: &Tolerance) -> Result<Complex64> {
    let den = qpoch_multi(&[nome.p_pow(-2.0 * nu), nome.p()], nome.p(), tol)?.value;
    Ok(cdiv(half_norm(nome, tol)?, den) * real_power(1.0 - p, 2.0 * nu))
}

fn gamma_target(nu: Complex64) -> Result<Complex64> {
    if is_integer(2.0 * nu) {
        return Err(Error::DegenerateOrder);
    }
    Ok(-1.0 / ((2.0 * PI * nu).sin() * gamma(2.0 * nu + 1.0)?))
}

pub fn gamma_limit_scan(nu: Complex64, p_grid: &[f64], tol: &Tolerance) -> Result<Vec<LimitScanRow>> {
    let target = gamma_target(nu)?;
    scan(p_grid, target, |nome, p| gamma_factor(nu, nome, p, tol))
}

/// `θ_p(±p^{ν₁}/((1-p²)x)) / θ_p(±p^{ν₂}/((1-p²)x)) · (1-p²)^{ν₂-ν₁}` against
/// `(±x)^{ν₁-ν₂}`; `negate` selects the lower signs.
pub fn theta_ratio_limit_scan(
    nu1: Complex64,
    nu2: Complex64,
    x: Complex64,
    p_grid: &[f64],
    negate: bool,
    tol: &Tolerance,
) -> Result<Vec<LimitScanRow>> {
    check_point(x)?;
    let sign = if negate { -ONE } else { ONE };
    let target = principal_power(sign * x, nu1 - nu2)?;
    scan(p_grid, target, |nome, p| {
        if nu1 == nu2 {
            return Ok(ONE);
        }
        let w = sign / ((1.0 - p * p) * x);
        let r = ratio(nome, nome.p_pow(nu1) * w, nome.p_pow(nu2) * w, tol)?;
        Ok(r * real_power(1.0 - p * p, nu2 - nu1))
    })
}

/// `θ_p(-√p) θ_p(-K/x) - θ_√p(√(K/x)) θ_√p(-√(K/x))`, exact at fixed `p`.
pub fn theta_split_identity_residual(k: Complex64, x: Complex64, nome: &Nome, tol: &Tolerance) -> Result<Residual> {
    if k == ZERO || x == ZERO {
        return Err(Error::ZeroArgument);
    }
    let p = nome.p();
    let sp = nome.p_pow(Complex64::new(0.5, 0.0));
    let w = (k / x).sqrt();
    let lhs = theta_scaled(p, -sp, tol)?.value()? * theta_scaled(p, -k / x, tol)?.value()?;
    let rhs = theta_scaled(sp, w, tol)?.value()? * theta_scaled(sp, -w, tol)?.value()?;
    Ok(Residual::from_terms(&[lhs, -rhs]))
}

/// `Σ_n (-1)^n (√p)^{n²}` summed directly, minus `θ_p(-√p)` and minus
/// `(√p;√p)_∞ / (-√p;√p)_∞`.
pub fn theta_sum_representation_residuals(nome: &Nome, tol: &Tolerance) -> Result<[Residual; 2]> {
    let p = nome.p();
    let sp = nome.p_pow(Complex64::new(0.5, 0.0));
    let mut sum = ONE;
    let mut run = 0;
    let mut n: u64 = 1;
    loop {
        let term = 2.0 * nome.p_pow(Complex64::new((n * n) as f64 / 2.0, 0.0));
        let term = if n % 2 == 1 { -term } else { term };
        sum += term;
        if tol.is_small(term.norm(), sum.norm()) {
            run += 1;
            if run >= tol.consecutive_small {
                break;
            }
        } else {
            run = 0;
        }
        n += 1;
        if n as usize > tol.max_terms {
            return Err(Error::MaxTermsExceeded { terms: tol.max_terms });
        }
    }
    let th = theta_scaled(p, -sp, tol)?.value()?;
    let prod = qpoch_inf(sp, sp, tol)?.value / qpoch_inf(-sp, sp, tol)?.value;
    Ok([Residual::from_terms(&[sum, -th]), Residual::from_terms(&[sum, -prod])])
}

/// The two theta-quotient identities obtained by splitting base `p` into
/// base `√p`, with `w = 1/((1-p)√x)`:
///
/// ```text
/// θ_p(-p^{2ν+2}/((1-p)²x)) / θ_p(-p^{ν+2}/((1-p)²x))
///     = θ_√p(p^{ν+1}w) θ_√p(-p^{ν+1}w) / (θ_√p(p^{ν/2+1}w) θ_√p(-p^{ν/2+1}w))
/// θ_p(-p²/((1-p)²x)) / θ_p(-p^{ν+2}/((1-p)²x))
///     = θ_√p(p w) θ_√p(-p w) / (θ_√p(p^{ν/2+1}w) θ_√p(-p^{ν/2+1}w))
/// ```
pub fn theta_split_corollary_residuals(
    nu: Complex64,
    x: Complex64,
    nome: &Nome,
    tol: &Tolerance,
) -> Result<[Residual; 2]> {
    if x == ZERO {
        return Err(Error::ZeroArgument);
    }
    let p = nome.p();
    let sp = nome.p_pow(Complex64::new(0.5, 0.0));
    let u = -1.0 / ((1.0 - p) * (1.0 - p) * x);
    let w = 1.0 / ((1.0 - p) * x.sqrt());
    let den_arg = nome.p_pow(nu / 2.0 + 1.0) * w;
    let split = |a: Complex64| -> Result<Complex64> {
        let s = |z: Complex64| theta_scaled(sp, z, tol);
        Ok(s(a)?.ratio(&s(den_arg)?)? * s(-a)?.ratio(&s(-den_arg)?)?)
    };
    let e = nome.p_pow(nu + 2.0) * u;
    let lhs1 = ratio(nome, nome.p_pow(2.0 * nu + 2.0) * u, e, tol)?;
    let lhs2 = ratio(nome, p * p * u, e, tol)?;
    let rhs1 = split(nome.p_pow(nu + 1.0) * w)?;
    let rhs2 = split(p * w)?;
    Ok([
        Residual::from_terms(&[lhs1, -rhs1]),
        Residual::from_terms(&[lhs2, -rhs2]),
    ])
}

/// Theta factor of the first (`second = false`) or second term of `h_ν`
/// at `t = 1/((1-p)²x)`.
fn theta_power_factor(
    nu: Complex64,
    x: Complex64,
    nome: &Nome,
    p: f64,
    second: bool,
    tol: &Tolerance,
) -> Result<Complex64> {
    let u = -1.0 / ((1.0 - p) * (1.0 - p) * x);
    let e = nome.p_pow(nu + 2.0) * u;
    if second {
        Ok(ratio(nome, nome.p_powi(2) * u, e, tol)? * real_power(1.0 - p, 2.0 * nu))
    } else {
        Ok(ratio(nome, nome.p_pow(2.0 * nu + 2.0) * u, e, tol)? * real_power(1.0 - p, -2.0 * nu))
    }
}

fn theta_power_target(nu: Complex64, x: Complex64, second: bool) -> Result<Complex64> {
    let s = if second { -ONE } else { ONE };
    Ok((s * I * PI * nu).exp() * principal_power(x, s * nu)?)
}

/// Item 1: `θ_p(-p^{2ν+2}/(x(1-p)²)) / θ_p(-p^{ν+2}/(x(1-p)²)) · (1-p)^{-2ν} → e^{νπi} x^ν`.
/// Item 2 (`item2 = true`): numerator `θ_p(-p²/(x(1-p)²))`, factor
/// `(1-p)^{2ν}`, target `e^{-νπi} x^{-ν}`.
pub fn theta_power_limit_scan(
    nu: Complex64,
    x: Complex64,
    p_grid: &[f64],
    item2: bool,
    tol: &Tolerance,
) -> Result<Vec<LimitScanRow>> {
    check_point(x)?;
    let target = theta_power_target(nu, x, item2)?;
    scan(p_grid, target, |nome, p| {
        if nu == ZERO {
            return Ok(ONE);
        }
        theta_power_factor(nu, x, nome, p, item2, tol)
    })
}

fn onephione_factor(
    nu: Complex64,
    x: Complex64,
    nome: &Nome,
    p: f64,
    variant: bool,
    tol: &Tolerance,
) -> Result<Complex64> {
    let h = (1.0 - p) * (1.0 - p) * x;
    if variant {
        Ok(phi11(nome.p_pow(1.0 - 2.0 * nu), nome.p(), nome.p_pow(-2.0 * nu) * h, tol)?.value)
    } else {
        Ok(phi11(nome.p_pow(1.0 + 2.0 * nu), nome.p(), h, tol)?.value)
    }
}

/// `₁φ₁(0; p^{1+2ν}; p, (1-p)²x) → ₀F₁(-; 1+2ν; -x)`; the variant is
/// `₁φ₁(0; p^{1-2ν}; p, p^{-2ν}(1-p)²x) → ₀F₁(-; 1-2ν; -x)`.
pub fn onephione_limit_scan(
    nu: Complex64,
    x: Complex64,
    p_grid: &[f64],
    variant: bool,
    tol: &Tolerance,
) -> Result<Vec<LimitScanRow>> {
    let alpha = if variant { 1.0 - 2.0 * nu } else { 1.0 + 2.0 * nu };
    let target = f01(alpha, -x, tol)?.value;
    scan(p_grid, target, |nome, p| onephione_factor(nu, x, nome, p, variant, tol))
}

/// `-i e^{-νπi} H⁽²⁾_{2ν}(2√x)`.
pub fn main_limit_target(nu: Complex64, x: Complex64, tol: &Tolerance) -> Result<Complex64> {
    check_order(nu)?;
    check_point(x)?;
    let z = 2.0 * x.sqrt();
    Ok(-I * (-I * PI * nu).exp() * hankel(HankelKind::H2, 2.0 * nu, z, tol)?)
}

/// `i e^{νπi} H⁽¹⁾_{2ν}(2√x)`, the mirror image of [`main_limit_target`]
/// under complex conjugation for real `ν`.
pub fn main_limit_mirror_target(nu: Complex64, x: Complex64, tol: &Tolerance) -> Result<Complex64> {
    check_order(nu)?;
    check_point(x)?;
    let z = 2.0 * x.sqrt();
    Ok(I * (I * PI * nu).exp() * hankel(HankelKind::H1, 2.0 * nu, z, tol)?)
}

/// `h_ν(1/((1-p)²x); p)` against `-i e^{-νπi} H⁽²⁾_{2ν}(2√x)`, with `h_ν`
/// formed from the convergent right-hand side of the connection formula.
///
/// The spiral gate of `tol` is not applied: the log-spacing of the excluded
/// spiral shrinks like `1 - p`, so any fixed gate eventually rejects every
/// point on its ray. Exact zeros still fail.
pub fn main_limit_scan(nu: Complex64, x: Complex64, p_grid: &[f64], tol: &Tolerance) -> Result<Vec<LimitScanRow>> {
    let target = main_limit_target(nu, x, tol)?;
    let ungated = tol.with_spiral_gate(0.0);
    scan(p_grid, target, |nome, p| {
        h_nu(nu, nome, 1.0 / ((1.0 - p) * (1.0 - p) * x), &ungated)
    })
}

/// The three bracketed factors of each term of `h_ν(1/((1-p)²x); p)`
/// (gamma, theta, `₁φ₁`) and their limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainLimitParts {
    pub p: f64,
    pub plus: [LimitScanRow; 3],
    pub minus: [LimitScanRow; 3],
}

impl MainLimitParts {
    /// Sum of the two products of factors; equals `h_ν`.
    pub fn value(&self) -> Complex64 {
        let prod = |r: &[LimitScanRow; 3]| r.iter().map(|r| r.value).product::<Complex64>();
        prod(&self.plus) + prod(&self.minus)
    }
}

pub fn main_limit_parts(nu: Complex64, x: Complex64, p: f64, tol: &Tolerance) -> Result<MainLimitParts> {
    check_order(nu)?;
    check_point(x)?;
    let nome = Nome::real(p)?;
    let row = |v: Complex64, t: Complex64| LimitScanRow::new(p, v, t);
    let plus = [
        row(gamma_factor(nu, &nome, p, tol)?, gamma_target(nu)?),
        row(
            theta_power_factor(nu, x, &nome, p, false, tol)?,
            theta_power_target(nu, x, false)?,
        ),
        row(
            onephione_factor(nu, x, &nome, p, false, tol)?,
            f01(1.0 + 2.0 * nu, -x, tol)?.value,
        ),
    ];
    let minus = [
        row(gamma_factor(-nu, &nome, p, tol)?, gamma_target(-nu)?),
        row(
            theta_power_factor(nu, x, &nome, p, true, tol)?,
            theta_power_target(nu, x, true)?,
        ),
        row(
            onephione_factor(nu, x, &nome, p, true, tol)?,
            f01(1.0 - 2.0 * nu, -x, tol)?.value,
        ),
    ];
    Ok(MainLimitParts { p, plus, minus })
}

/// Three forms of the limit of `h_ν(1/((1-p)²x); p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitingCombination {
    /// Product of the termwise limits of the factors.
    pub lemma_product: Complex64,
    /// `(-e^{νπi} J_{2ν}(2√x) + e^{-νπi} J_{-2ν}(2√x)) / sin(2νπ)`.
    pub bessel_form: Complex64,
    /// `-i e^{-νπi} H⁽²⁾_{2ν}(2√x)`.
    pub hankel_form: Complex64,
}

pub fn limiting_combination(nu: Complex64, x: Complex64, tol: &Tolerance) -> Result<LimitingCombination> {
    check_order(nu)?;
    check_point(x)?;
    let lemma_product = gamma_target(nu)? * theta_power_target(nu, x, false)? * f01(1.0 + 2.0 * nu, -x, tol)?.value
        + gamma_target(-nu)? * theta_power_target(nu, x, true)? * f01(1.0 - 2.0 * nu, -x, tol)?.value;
    let z = 2.0 * x.sqrt();
    let e = (I * PI * nu).exp();
    let bessel_form = (-e * bessel_j(2.0 * nu, z, tol)? + bessel_j(-2.0 * nu, z, tol)? / e) / (2.0 * PI * nu).sin();
    Ok(LimitingCombination {
        lemma_product,
        bessel_form,
        hankel_form: main_limit_target(nu, x, tol)?,
    })
}

/// `J⁽³⁾_ν((1-q)x; q) → J_ν(2x)` and `J⁽ᵏ⁾_ν((1-q)x; q) → J_ν(x)` for
/// `k = 1, 2`, along the given values of `q`. Rows report `q` in `p`.
pub fn qbessel_classical_limit_scan(
    kind: QBesselKind,
    nu: Complex64,
    x: f64,
    q_grid: &[f64],
    tol: &Tolerance,
) -> Result<Vec<LimitScanRow>> {
    let xc = Complex64::new(x, 0.0);
    let target = match kind {
        QBesselKind::J3 => bessel_j(nu, 2.0 * xc, tol)?,
        _ => bessel_j(nu, xc, tol)?,
    };
    q_grid
        .iter()
        .map(|&q| {
            let nome = Nome::from_q(Complex64::new(q, 0.0))?;
            let v = j_q_bessel(kind, nu, &nome, (1.0 - q) * xc, tol)?.value;
            Ok(LimitScanRow::new(q, v, target))
        })
        .collect()
}
