use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::pochhammer::check_base;
use crate::types::{Accumulator, SeriesValue, Tolerance};

/// Factors this close to zero count as vanishing.
const VANISH: f64 = 16.0 * f64::EPSILON;

/// Basic hypergeometric series
///
/// ```text
/// rφs(a; b; q, x) = Σ_n (a_1..a_r; q)_n / ((b_1..b_s; q)_n (q;q)_n)
///                   · [(-1)^n q^{n(n-1)/2}]^{1+s-r} x^n
/// ```
///
/// summed through the term ratio. A numerator factor `1 - a_i q^n`
/// vanishing ends the series after term `n`.
pub fn rphis(a: &[Complex64], b: &[Complex64], q: Complex64, x: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    check_base(q)?;
    tol.validate()?;
    let one = Complex64::new(1.0, 0.0);
    if x == Complex64::new(0.0, 0.0) {
        return Ok(SeriesValue::exact(one));
    }
    let e = 1 + b.len() as i32 - a.len() as i32;
    let mut acc = Accumulator::new(tol);
    let mut term = one;
    let mut qn = one; // q^n
    let mut n = 0usize;
    loop {
        if acc.push(term)? {
            return Ok(acc.finish());
        }
        let mut num = one;
        for &ai in a {
            let f = 1.0 - ai * qn;
            if f.norm() <= VANISH {
                return Ok(SeriesValue {
                    value: acc.sum(),
                    terms_used: acc.terms(),
                    tail_bound: 0.0,
                });
            }
            num *= f;
        }
        let mut den = 1.0 - qn * q;
        for &bj in b {
            let f = 1.0 - bj * qn;
            if f.norm() <= VANISH {
                return Err(Error::DenominatorPole { index: n + 1 });
            }
            den *= f;
        }
        let confluence = if e == 0 { one } else { (-qn).powi(e) };
        term *= num / den * confluence * x;
        qn *= q;
        n += 1;
    }
}

/// `₁φ₁(0; b; q, x)`, the series used throughout the connection formulae.
pub fn phi11(b: Complex64, q: Complex64, x: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    rphis(&[Complex64::new(0.0, 0.0)], &[b], q, x, tol)
}
