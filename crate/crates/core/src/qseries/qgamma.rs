use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::pochhammer::qpoch_inf;
use crate::qseries::power::{is_integer, principal_power};
use crate::types::{cdiv, SeriesValue, Tolerance};

/// Jackson's q-gamma `Γ_q(x) = (q;q)_∞ / (q^x;q)_∞ · (1-q)^{1-x}` for real
/// `0 < q < 1`.
pub fn q_gamma(q: f64, x: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidBase { modulus: q.abs() });
    }
    if is_integer(x) && x.re.round() <= 0.0 {
        return Err(Error::PoleError {
            index: x.re.round() as i64,
        });
    }
    let qc = Complex64::new(q, 0.0);
    let qx = (x * q.ln()).exp();
    let num = qpoch_inf(qc, qc, tol)?;
    let den = qpoch_inf(qx, qc, tol)?;
    let power = principal_power(Complex64::new(1.0 - q, 0.0), 1.0 - x)?;
    let value = cdiv(num.value, den.value) * power;
    let rel = num.tail_bound / num.value.norm() + den.tail_bound / den.value.norm();
    Ok(SeriesValue {
        value,
        terms_used: num.terms_used + den.terms_used,
        tail_bound: value.norm() * rel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn small_integers() {
        let tol = Tolerance::default();
        for &(x, want) in &[(1.0, 1.0), (2.0, 1.0), (3.0, 1.5)] {
            let v = q_gamma(0.5, c(x), &tol).unwrap().value;
            assert!((v - c(want)).norm() < 1e-14, "{x}: {v}");
        }
    }

    #[test]
    fn poles() {
        let tol = Tolerance::default();
        assert_eq!(q_gamma(0.5, c(0.0), &tol), Err(Error::PoleError { index: 0 }));
        assert_eq!(q_gamma(0.5, c(-2.0), &tol), Err(Error::PoleError { index: -2 }));
    }

    #[test]
    fn recurrence() {
        let tol = Tolerance::default();
        let q = 0.7;
        let x = Complex64::new(0.35, 0.4);
        let a = q_gamma(q, x, &tol).unwrap().value;
        let b = q_gamma(q, x + 1.0, &tol).unwrap().value;
        let qx = (x * q.ln()).exp();
        let want = (1.0 - qx) / (1.0 - q) * a;
        assert!((b - want).norm() <= 1e-12 * b.norm());
    }
}
