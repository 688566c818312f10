use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::Cdd;
use super::gamma::rgamma;
use crate::error::{Error, Result};
use crate::qseries::{is_integer, on_negative_axis, principal_power};
use crate::types::{SeriesValue, Tolerance};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `₀F₁(-; α; z) = Σ z^n / ((α)_n n!)`.
///
/// Summed in double-double: for `|z| ~ 10²` the terms reach `~10^13` while
/// the sum is `O(1)`.
pub fn f01(alpha: Complex64, z: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    f01_dd(alpha, Cdd::from_c(z), tol)
}

fn f01_dd(alpha: Complex64, zd: Cdd, tol: &Tolerance) -> Result<SeriesValue> {
    tol.validate()?;
    let z = zd.to_c();
    if is_integer(alpha) && alpha.re.round() <= 0.0 {
        return Err(Error::PoleError {
            index: alpha.re.round() as i64,
        });
    }
    if z == ZERO {
        return Ok(SeriesValue::exact(Complex64::new(1.0, 0.0)));
    }
    let ad = Cdd::from_c(alpha);
    let mut term = Cdd::from_c(Complex64::new(1.0, 0.0));
    let mut sum = term;
    let mut run = 0;
    for n in 0..tol.max_terms {
        let k = n as f64;
        let den = ad.add(Cdd::from_f64(k)).mul_f64(k + 1.0);
        term = term.mul(zd).div(den);
        sum = sum.add(term);
        let last = term.norm();
        let decaying = k + 1.0 > z.norm().sqrt();
        if decaying && tol.is_small(last, sum.norm()) {
            run += 1;
            if run >= tol.consecutive_small {
                return Ok(SeriesValue {
                    value: sum.to_c(),
                    terms_used: n + 2,
                    tail_bound: last,
                });
            }
        } else {
            run = 0;
        }
    }
    Err(Error::MaxTermsExceeded { terms: tol.max_terms })
}

/// `J_ν(z) = (z/2)^ν / Γ(ν+1) · ₀F₁(-; ν+1; -z²/4)`.
pub fn bessel_j(nu: Complex64, z: Complex64, tol: &Tolerance) -> Result<Complex64> {
    let integer = is_integer(nu);
    if integer && nu.re.round() < 0.0 {
        return Err(Error::PoleError {
            index: nu.re.round() as i64 + 1,
        });
    }
    if on_negative_axis(z) && !integer {
        return Err(Error::BranchError);
    }
    let half = z / 2.0;
    let power = if integer {
        half.powi(nu.re.round() as i32)
    } else if z == ZERO {
        return if nu.re > 0.0 {
            Ok(ZERO)
        } else {
            Err(Error::PoleError { index: 0 })
        };
    } else {
        principal_power(half, nu)?
    };
    if power == ZERO {
        return Ok(ZERO);
    }
    let hd = Cdd::from_c(half);
    let series = f01_dd(nu + 1.0, hd.mul(hd).neg(), tol)?.value;
    Ok(power * rgamma(nu + 1.0) * series)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    H1,
    H2,
}

/// Hankel functions from the Bessel functions of order `±ν`:
///
/// ```text
/// H1 =  (i e^{-νπi} / sin νπ) (J_ν - e^{νπi} J_{-ν})
/// H2 = -(i e^{νπi}  / sin νπ) (J_ν - e^{-νπi} J_{-ν})
/// ```
///
/// The recessive kind (H1 for `Im z > 0`, H2 for `Im z < 0`) is a
/// cancellation of `J_{±ν}`, so its relative error grows like
/// `ε e^{2|Im z|}`.
pub fn hankel(kind: HankelKind, nu: Complex64, z: Complex64, tol: &Tolerance) -> Result<Complex64> {
    if is_integer(nu) {
        return Err(Error::IntegerOrderError);
    }
    let jp = bessel_j(nu, z, tol)?;
    let jm = bessel_j(-nu, z, tol)?;
    let s = (PI * nu).sin();
    let e = (I * PI * nu).exp();
    Ok(match kind {
        HankelKind::H1 => I / (e * s) * (jp - e * jm),
        HankelKind::H2 => -(I * e / s) * (jp - jm / e),
    })
}

/// Truncation order and phase of the large-argument Hankel expansions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    /// Highest `s` kept; capped at [`AsymptoticParams::MAX_ORDER`].
    pub s_max: usize,
    /// `ζ = z - νπ/2 - π/4`.
    pub zeta: Complex64,
}

impl AsymptoticParams {
    pub const MAX_ORDER: usize = 20;

    pub fn new(s_max: usize, nu: Complex64, z: Complex64) -> Self {
        AsymptoticParams {
            s_max: s_max.min(Self::MAX_ORDER),
            zeta: z - nu * (PI / 2.0) - PI / 4.0,
        }
    }
}

/// `A_s(ν) = (4ν² - 1²)(4ν² - 3²)⋯(4ν² - (2s-1)²) / (s! 8^s)`.
pub fn asymptotic_coefficient(nu: Complex64, s: usize) -> Complex64 {
    let mu = 4.0 * nu * nu;
    let mut a = Complex64::new(1.0, 0.0);
    for j in 1..=s {
        let odd = (2 * j - 1) as f64;
        a *= (mu - odd * odd) / (8.0 * j as f64);
    }
    a
}

/// `(2/(πz))^{1/2} e^{±iζ} Σ_{s ≤ S} (±i)^s A_s(ν) / z^s`, upper signs for
/// `H1`. Accuracy is advisory and only meaningful for `|z| ≫ 1`.
pub fn hankel_asymptotic(kind: HankelKind, nu: Complex64, z: Complex64, params: &AsymptoticParams) -> Complex64 {
    let sign = match kind {
        HankelKind::H1 => I,
        HankelKind::H2 => -I,
    };
    let mut sum = ZERO;
    let mut factor = Complex64::new(1.0, 0.0);
    for s in 0..=params.s_max {
        sum += factor * asymptotic_coefficient(nu, s);
        factor *= sign / z;
    }
    (2.0 / (PI * z)).sqrt() * (sign * params.zeta).exp() * sum
}
