//! Jackson's first and second q-Bessel functions, the Hahn–Exton function
//! and the q-difference equations they satisfy. All functions take the
//! base `q = p²` through a [`Nome`]; half-powers of `q` are powers of `p`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::{is_integer, on_negative_axis, principal_power, qpoch_inf, rphis};
use crate::types::{Nome, Residual, SeriesValue, Tolerance};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QBesselKind {
    J1,
    J2,
    J3,
}

/// `x^ν`, integer orders by repeated multiplication so that the negative
/// axis is allowed for them.
fn order_power(x: Complex64, nu: Complex64) -> Result<Complex64> {
    if is_integer(nu) {
        let n = nu.re.round() as i32;
        if x == ZERO {
            return match n {
                0 => Ok(ONE),
                n if n > 0 => Ok(ZERO),
                _ => Err(Error::PoleError { index: 0 }),
            };
        }
        return Ok(x.powi(n));
    }
    if x == ZERO {
        return if nu.re > 0.0 {
            Ok(ZERO)
        } else {
            Err(Error::PoleError { index: 0 })
        };
    }
    if on_negative_axis(x) {
        return Err(Error::BranchError);
    }
    principal_power(x, nu)
}

/// Evaluates `J_ν^{(k)}(x; q)`:
///
/// ```text
/// J1 = c (x/2)^ν ₂φ₁(0, 0; q^{ν+1}; q, -x²/4),          |x| < 2
/// J2 = c (x/2)^ν ₀φ₁(-; q^{ν+1}; q, -q^{ν+1} x²/4)
/// J3 = c  x^ν    ₁φ₁(0; q^{ν+1}; q, q x²)
/// c  = (q^{ν+1}; q)_∞ / (q; q)_∞
/// ```
///
/// With this `J2` argument the Hahn relation `J2 = (-x²/4; q)_∞ J1` holds.
pub fn j_q_bessel(kind: QBesselKind, nu: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    let q = nome.q();
    if kind == QBesselKind::J1 && x.norm() >= 2.0 {
        return Err(Error::RadiusError {
            modulus: x.norm(),
            radius: 2.0,
        });
    }
    if is_integer(nu) && nu.re.round() < 0.0 {
        // the prefactor vanishes and the series has a pole; the product is
        // the limit (-1)^n J_n, which is not evaluated here
        return Err(Error::PoleError {
            index: nu.re.round() as i64,
        });
    }
    let power = match kind {
        QBesselKind::J3 => order_power(x, nu)?,
        _ => order_power(x / 2.0, nu)?,
    };
    let b = nome.q_pow(nu + 1.0);
    let c_num = qpoch_inf(b, q, tol)?;
    let c_den = qpoch_inf(q, q, tol)?;
    if power == ZERO {
        return Ok(SeriesValue::exact(ZERO));
    }
    let x2 = x * x;
    let series = match kind {
        QBesselKind::J1 => rphis(&[ZERO, ZERO], &[b], q, -x2 / 4.0, tol)?,
        QBesselKind::J2 => rphis(&[], &[b], q, -b * x2 / 4.0, tol)?,
        QBesselKind::J3 => rphis(&[ZERO], &[b], q, q * x2, tol)?,
    };
    let pref = c_num.value / c_den.value * power;
    let value = pref * series.value;
    let rel = c_num.tail_bound / c_num.value.norm().max(f64::MIN_POSITIVE) + c_den.tail_bound / c_den.value.norm();
    Ok(SeriesValue {
        value,
        terms_used: c_num.terms_used + c_den.terms_used + series.terms_used,
        tail_bound: pref.norm() * series.tail_bound + value.norm() * rel,
    })
}

/// `J_{-ν}^{(3)}(x p^{-ν}; q)`, the second solution of the Hahn–Exton
/// equation around the origin.
pub fn j3_second_solution(nu: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    j_q_bessel(QBesselKind::J3, -nu, nome, x * nome.p_pow(-nu), tol)
}

/// Left-hand side of the q-difference equation of the given kind, applied
/// to `u` at `x`:
///
/// ```text
/// J1: u(xq) - (p^ν + p^{-ν}) u(xp) + (1 + x²/4) u(x)
/// J2: (1 + q x²/4) u(xq) - (p^ν + p^{-ν}) u(xp) + u(x)
/// J3: u(xq) - {(p^ν + p^{-ν}) - p^{2-ν} x²} u(xp) + u(x)
/// ```
pub fn qde_residual<F>(kind: QBesselKind, u: F, nu: Complex64, nome: &Nome, x: Complex64) -> Result<Residual>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let p = nome.p();
    let q = nome.q();
    let s = nome.p_pow(nu) + nome.p_pow(-nu);
    let x2 = x * x;
    let (uq, up, u0) = (u(x * q)?, u(x * p)?, u(x)?);
    let terms = match kind {
        QBesselKind::J1 => [uq, -s * up, (1.0 + x2 / 4.0) * u0],
        QBesselKind::J2 => [(1.0 + q * x2 / 4.0) * uq, -s * up, u0],
        QBesselKind::J3 => [uq, -(s - nome.p_pow(2.0 - nu) * x2) * up, u0],
    };
    Ok(Residual::from_terms(&terms))
}

/// `[σ_p² - {(p^ν + p^{-ν}) - x² p^{2-ν}} σ_p + 1] y` at `x`.
pub fn heqb_residual<F>(y: F, nu: Complex64, nome: &Nome, x: Complex64) -> Result<Residual>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let p = nome.p();
    let s = nome.p_pow(nu) + nome.p_pow(-nu);
    let coeff = s - x * x * nome.p_pow(2.0 - nu);
    let terms = [y(x * p * p)?, -coeff * y(x * p)?, y(x)?];
    Ok(Residual::from_terms(&terms))
}

/// `J_ν^{(2)}(x;q) - (-x²/4; q)_∞ J_ν^{(1)}(x;q)`.
pub fn hahn_relation_residual(nu: Complex64, nome: &Nome, x: Complex64, tol: &Tolerance) -> Result<Residual> {
    let j1 = j_q_bessel(QBesselKind::J1, nu, nome, x, tol)?.value;
    let j2 = j_q_bessel(QBesselKind::J2, nu, nome, x, tol)?.value;
    let factor = qpoch_inf(-x * x / 4.0, nome.q(), tol)?.value;
    Ok(Residual::from_terms(&[j2, -factor * j1]))
}

/// `u(x) v(px) - u(px) v(x)`.
pub fn casoratian<F, G>(u: F, v: G, nome: &Nome, x: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
    G: Fn(Complex64) -> Result<Complex64>,
{
    let px = nome.p() * x;
    Ok(u(x)? * v(px)? - u(px)? * v(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nome_q(q: f64) -> Nome {
        Nome::real(q.sqrt()).unwrap()
    }

    #[test]
    fn values_at_origin() {
        let tol = Tolerance::default();
        let n = nome_q(0.25);
        assert_eq!(
            j_q_bessel(QBesselKind::J3, c(0.0, 0.0), &n, c(0.0, 0.0), &tol)
                .unwrap()
                .value,
            ONE
        );
        assert_eq!(
            j_q_bessel(QBesselKind::J3, c(1.0, 0.0), &n, c(0.0, 0.0), &tol)
                .unwrap()
                .value,
            ZERO
        );
        let n = Nome::real(0.5).unwrap();
        assert!(matches!(
            j3_second_solution(c(0.4, 0.0), &n, c(0.0, 0.0), &tol),
            Err(Error::PoleError { .. })
        ));
        assert_eq!(
            j3_second_solution(c(-0.4, 0.0), &n, c(0.0, 0.0), &tol).unwrap().value,
            ZERO
        );
    }

    #[test]
    fn j3_against_direct_series() {
        let tol = Tolerance::default();
        let q = 0.25f64;
        let (nu, x) = (0.4f64, 0.3f64);
        let b = q.powf(nu + 1.0);
        let mut pref = 1.0;
        for k in 0..200 {
            pref *= (1.0 - b * q.powi(k)) / (1.0 - q.powi(k + 1));
        }
        let mut sum = 0.0;
        let (mut pb, mut pq) = (1.0, 1.0);
        for n in 0..60i32 {
            if n > 0 {
                pb *= 1.0 - b * q.powi(n - 1);
                pq *= 1.0 - q.powi(n);
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * q.powi(n * (n - 1) / 2) * (q * x * x).powi(n) / (pb * pq);
        }
        let oracle = pref * x.powf(nu) * sum;
        let v = j_q_bessel(QBesselKind::J3, c(nu, 0.0), &nome_q(q), c(x, 0.0), &tol)
            .unwrap()
            .value;
        assert!((v.re - oracle).abs() <= 1e-12 * oracle.abs());
    }

    #[test]
    fn errors() {
        let tol = Tolerance::default();
        let n = nome_q(0.25);
        assert!(matches!(
            j_q_bessel(QBesselKind::J1, c(0.3, 0.0), &n, c(2.0, 0.0), &tol),
            Err(Error::RadiusError { .. })
        ));
        assert_eq!(
            j_q_bessel(QBesselKind::J3, c(0.3, 0.0), &n, c(-1.0, 0.0), &tol),
            Err(Error::BranchError)
        );
        assert!(j_q_bessel(QBesselKind::J3, c(2.0, 0.0), &n, c(-1.0, 0.0), &tol).is_ok());
    }

    #[test]
    fn difference_equations() {
        let tol = Tolerance::default();
        let n = nome_q(0.25);
        let nu = c(0.3, 0.0);
        for (kind, x) in [
            (QBesselKind::J3, c(0.4, 0.0)),
            (QBesselKind::J1, c(0.5, 0.0)),
            (QBesselKind::J2, c(0.7, 0.2)),
        ] {
            let r = qde_residual(kind, |y| Ok(j_q_bessel(kind, nu, &n, y, &tol)?.value), nu, &n, x).unwrap();
            assert!(r.relative() < 1e-12, "{kind:?}: {}", r.relative());
        }
        let zero = qde_residual(QBesselKind::J3, |_| Ok(ZERO), nu, &n, c(0.4, 0.0)).unwrap();
        assert_eq!(zero.value, ZERO);
    }

    #[test]
    fn both_solutions_solve_heqb() {
        let tol = Tolerance::default();
        let n = Nome::real(0.5).unwrap();
        let nu = c(0.3, 0.0);
        let x = c(0.4, 0.0);
        let first = heqb_residual(|y| Ok(j_q_bessel(QBesselKind::J3, nu, &n, y, &tol)?.value), nu, &n, x).unwrap();
        let second = heqb_residual(|y| Ok(j3_second_solution(nu, &n, y, &tol)?.value), nu, &n, x).unwrap();
        assert!(first.relative() < 1e-12);
        assert!(second.relative() < 1e-12);
        let w = casoratian(
            |y| Ok(j_q_bessel(QBesselKind::J3, nu, &n, y, &tol)?.value),
            |y| Ok(j3_second_solution(nu, &n, y, &tol)?.value),
            &n,
            x,
        )
        .unwrap();
        assert!(w.norm() > 1e-8);
    }

    #[test]
    fn hahn_relation() {
        let tol = Tolerance::default();
        let n = nome_q(0.25);
        let r = hahn_relation_residual(c(0.3, 0.0), &n, c(0.5, 0.0), &tol).unwrap();
        assert!(r.relative() < 1e-13);
        let r = hahn_relation_residual(c(1.0, 0.0), &n, c(1.0, 0.0), &tol).unwrap();
        assert!(r.relative() < 1e-13);
        let r = hahn_relation_residual(c(0.3, 0.0), &n, c(0.0, 0.0), &tol).unwrap();
        assert_eq!(r.value, ZERO);
    }

    #[test]
    fn second_solution_is_a_substitution() {
        let tol = Tolerance::default();
        let n = Nome::real(0.5).unwrap();
        let x = c(0.2, 0.0);
        let a = j3_second_solution(c(0.4, 0.0), &n, x, &tol).unwrap().value;
        let b = j_q_bessel(QBesselKind::J3, c(-0.4, 0.0), &n, x * 0.5f64.powf(-0.4), &tol)
            .unwrap()
            .value;
        assert!((a - b).norm() <= 1e-15 * a.norm());
    }
}
