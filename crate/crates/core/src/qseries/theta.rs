//! Jacobi theta function `θ_q(x) = Σ_{n∈ℤ} q^{n(n-1)/2} x^n`.
//!
//! Every evaluation first reduces the argument with
//! `θ(x) = q^{k(k-1)/2} x^k θ(q^k x)` so that `|q^k x| ∈ [|q|, 1)`. The
//! prefactor is kept as a logarithm, which is what lets ratios like
//! `θ_p(p^a X)/θ_p(p^b X)` be formed for `|X| ~ (1-p)^{-2}` without
//! overflow.
//!
//! The reduced sum is taken either directly (symmetric in `n`) or through
//! its Poisson dual
//!
//! ```text
//! θ_q(e^w) = sqrt(2π/s) · exp(s c²/2) · Σ_m exp(-2π² m²/s - 2πi m c),
//! s = -Log q,  c = 1/2 + w/s,
//! ```
//!
//! whichever shows less cancellation. When `|q| → 1` and the reduced
//! argument is not close to the positive axis, `|θ|` is exponentially
//! smaller than its largest direct term, so the direct sum alone cannot
//! deliver double precision there.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::pochhammer::check_base;
use crate::types::{Accumulator, SeriesValue, Tolerance};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Direct sums with at most this much cancellation are accepted as is.
const DIRECT_CONDITION_LIMIT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaRoute {
    Direct,
    Modular,
}

/// `exp(log_scale) · mantissa`, kept apart so that huge or tiny values can
/// be divided by one another.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub log_scale: Complex64,
    pub mantissa: Complex64,
    pub terms_used: usize,
    /// Truncation bound relative to `|mantissa|`.
    pub rel_tail: f64,
    pub route: ThetaRoute,
    /// `Σ|terms| / |sum|` of the route that was used.
    pub condition: f64,
}

impl ScaledValue {
    pub fn is_zero(&self) -> bool {
        self.mantissa == ZERO
    }

    pub fn value(&self) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(ZERO);
        }
        let v = if self.log_scale.re.abs() < 600.0 {
            self.log_scale.exp() * self.mantissa
        } else {
            (self.log_scale + self.mantissa.ln()).exp()
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::ScaleOverflow)
        }
    }

    /// `self / other`, formed on the log scale.
    pub fn ratio(&self, other: &ScaledValue) -> Result<Complex64> {
        if other.is_zero() {
            return Err(Error::SpiralError {
                log_distance: 0.0,
                k: 0,
            });
        }
        let v = (self.log_scale - other.log_scale).exp() * (self.mantissa / other.mantissa);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::ScaleOverflow)
        }
    }
}

/// Integer `k` with `|q^k x| ∈ [|q|, 1)` and `Log x + k·Log q`.
pub fn reduce_argument(q: Complex64, x: Complex64) -> (i64, Complex64) {
    let lq = q.ln();
    let lx = x.ln();
    let a = -lq.re;
    let mut k = (lx.re / a).floor() as i64 + 1;
    loop {
        let r = lx.re + k as f64 * lq.re;
        if r >= 0.0 {
            k += 1;
        } else if r < lq.re {
            k -= 1;
        } else {
            break;
        }
    }
    (k, lx + lq * k as f64)
}

fn wrap_phase(z: Complex64) -> Complex64 {
    let turns = (z.im / (2.0 * PI)).round();
    Complex64::new(z.re, z.im - turns * 2.0 * PI)
}

struct RawSum {
    sum: Complex64,
    log_scale: Complex64,
    terms: usize,
    rel_tail: f64,
    condition: f64,
}

fn condition(sum: Complex64, abs_sum: f64) -> f64 {
    let m = sum.norm();
    if m == 0.0 {
        f64::INFINITY
    } else {
        abs_sum / m
    }
}

fn direct_sum(q: Complex64, log_y: Complex64, tol: &Tolerance) -> Result<RawSum> {
    let y = log_y.exp();
    let y_inv = (-log_y).exp();
    let mut acc = Accumulator::new(tol);
    acc.push(ONE)?;
    let mut up = y; // q^{n(n-1)/2} y^n
    let mut down = q * y_inv; // q^{m(m+1)/2} y^{-m}
    let mut qn = q;
    loop {
        let done = acc.push_weighted(up + down, up.norm() + down.norm())?;
        if done {
            break;
        }
        up *= qn * y;
        qn *= q;
        down *= qn * y_inv;
    }
    let sum = acc.sum();
    Ok(RawSum {
        sum,
        log_scale: ZERO,
        terms: 2 * acc.terms() - 1,
        rel_tail: acc.tail_bound() / sum.norm().max(f64::MIN_POSITIVE),
        condition: condition(sum, acc.abs_sum()),
    })
}

fn modular_sum(q: Complex64, log_y: Complex64, tol: &Tolerance) -> Result<RawSum> {
    let s = -q.ln();
    let w = wrap_phase(log_y);
    let c = 0.5 + w / s;
    let a = -2.0 * PI * PI / s;
    let b = Complex64::new(0.0, -2.0 * PI) * c;
    let exponent = |m: f64| a * m * m + b * m;
    // the real part of the exponent is a concave quadratic in m
    let vertex = -b.re / (2.0 * a.re);
    let m0 = if vertex.is_finite() { vertex.round() } else { 0.0 };
    let e0 = exponent(m0);
    let mut acc = Accumulator::new(tol);
    acc.push(ONE)?;
    let mut j = 1.0;
    loop {
        let hi = (exponent(m0 + j) - e0).exp();
        let lo = (exponent(m0 - j) - e0).exp();
        let done = acc.push_weighted(hi + lo, hi.norm() + lo.norm())?;
        if done {
            break;
        }
        j += 1.0;
    }
    let sum = acc.sum();
    let log_pref = 0.5 * (Complex64::new(2.0 * PI, 0.0) / s).ln() + 0.5 * s * c * c + e0;
    Ok(RawSum {
        sum,
        log_scale: log_pref,
        terms: 2 * acc.terms() - 1,
        rel_tail: acc.tail_bound() / sum.norm().max(f64::MIN_POSITIVE),
        condition: condition(sum, acc.abs_sum()),
    })
}

fn validate(q: Complex64, x: Complex64, tol: &Tolerance) -> Result<()> {
    check_base(q)?;
    if q == ZERO {
        return Err(Error::InvalidBase { modulus: 0.0 });
    }
    if x == ZERO {
        return Err(Error::ZeroArgument);
    }
    tol.validate()
}

fn assemble(k: i64, q: Complex64, x: Complex64, raw: RawSum, route: ThetaRoute) -> ScaledValue {
    let kf = k as f64;
    // q^{k(k-1)/2} x^k: integer exponents, so any branch of the logs works
    let reduction = q.ln() * (kf * (kf - 1.0) / 2.0) + x.ln() * kf;
    ScaledValue {
        log_scale: wrap_phase(reduction + raw.log_scale),
        mantissa: raw.sum,
        terms_used: raw.terms,
        rel_tail: raw.rel_tail,
        route,
        condition: raw.condition,
    }
}

/// `x = -q^m` exactly in floating point, where the sum vanishes term by term.
fn exact_zero(q: Complex64, x: Complex64, route: ThetaRoute) -> Option<ScaledValue> {
    let m = (x.norm().ln() / q.norm().ln()).round();
    if m.is_nan() || m.abs() > 4096.0 || x != -q.powi(m as i32) {
        return None;
    }
    Some(ScaledValue {
        log_scale: ZERO,
        mantissa: ZERO,
        terms_used: 0,
        rel_tail: 0.0,
        route,
        condition: f64::INFINITY,
    })
}

/// Theta evaluated along a fixed route (used to cross-check the two sums).
pub fn theta_with_route(q: Complex64, x: Complex64, route: ThetaRoute, tol: &Tolerance) -> Result<ScaledValue> {
    validate(q, x, tol)?;
    if let Some(z) = exact_zero(q, x, route) {
        return Ok(z);
    }
    let (k, log_y) = reduce_argument(q, x);
    let raw = match route {
        ThetaRoute::Direct => direct_sum(q, log_y, tol)?,
        ThetaRoute::Modular => modular_sum(q, log_y, tol)?,
    };
    Ok(assemble(k, q, x, raw, route))
}

/// `θ_q(x)` as a log-scaled value.
pub fn theta_scaled(q: Complex64, x: Complex64, tol: &Tolerance) -> Result<ScaledValue> {
    validate(q, x, tol)?;
    if let Some(z) = exact_zero(q, x, ThetaRoute::Direct) {
        return Ok(z);
    }
    let (k, log_y) = reduce_argument(q, x);
    let direct = match direct_sum(q, log_y, tol) {
        Ok(d) => Some(d),
        Err(Error::MaxTermsExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(d) = &direct {
        if d.sum == ZERO || d.condition <= DIRECT_CONDITION_LIMIT {
            let d = direct.unwrap();
            return Ok(assemble(k, q, x, d, ThetaRoute::Direct));
        }
    }
    let modular = modular_sum(q, log_y, tol)?;
    match direct {
        Some(d) if d.condition <= modular.condition => Ok(assemble(k, q, x, d, ThetaRoute::Direct)),
        _ => Ok(assemble(k, q, x, modular, ThetaRoute::Modular)),
    }
}

/// `θ_q(x) = Σ_{n∈ℤ} q^{n(n-1)/2} x^n` for `0 < |q| < 1`, `x ≠ 0`.
pub fn theta(q: Complex64, x: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    let s = theta_scaled(q, x, tol)?;
    let value = s.value()?;
    Ok(SeriesValue {
        value,
        terms_used: s.terms_used,
        tail_bound: value.norm() * s.rel_tail,
    })
}

/// `θ_q(num) / θ_q(den)`; fails with `SpiralError` when the denominator
/// vanishes.
pub fn theta_ratio(q: Complex64, num: Complex64, den: Complex64, tol: &Tolerance) -> Result<Complex64> {
    let a = theta_scaled(q, num, tol)?;
    let b = theta_scaled(q, den, tol)?;
    a.ratio(&b)
}
