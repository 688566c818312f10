use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{SeriesValue, Tolerance};

pub(crate) fn check_base(q: Complex64) -> Result<()> {
    let m = q.norm();
    if !(m < 1.0) {
        return Err(Error::InvalidBase { modulus: m });
    }
    Ok(())
}

/// `(a;q)_n = (1-a)(1-aq)...(1-aq^{n-1})`, with `(a;q)_0 = 1`.
pub fn qpoch_finite(a: Complex64, q: Complex64, n: usize) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aqk = a;
    for _ in 0..n {
        prod *= 1.0 - aqk;
        aqk *= q;
    }
    prod
}

/// `(a;q)_∞` for `|q| < 1`.
///
/// The tail bound uses `|∏_{j>n}(1 - aq^j) - 1| <= exp(Σ_{j>n}|aq^j|) - 1`.
pub fn qpoch_inf(a: Complex64, q: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    check_base(q)?;
    tol.validate()?;
    if a == Complex64::new(0.0, 0.0) {
        return Ok(SeriesValue::exact(Complex64::new(1.0, 0.0)));
    }
    let qm = q.norm();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aqk = a;
    let mut run = 0;
    for n in 0..tol.max_terms {
        prod *= 1.0 - aqk;
        if prod == Complex64::new(0.0, 0.0) {
            return Ok(SeriesValue {
                value: prod,
                terms_used: n + 1,
                tail_bound: 0.0,
            });
        }
        let step = aqk.norm();
        let pm = prod.norm();
        if tol.is_small(step * pm, pm) {
            run += 1;
        } else {
            run = 0;
        }
        aqk *= q;
        if run >= tol.consecutive_small {
            let tail_sum = aqk.norm() / (1.0 - qm);
            return Ok(SeriesValue {
                value: prod,
                terms_used: n + 1,
                tail_bound: pm * tail_sum.exp_m1(),
            });
        }
    }
    Err(Error::MaxTermsExceeded { terms: tol.max_terms })
}

/// `(a_1, ..., a_m; q)_∞`; the empty list gives 1.
pub fn qpoch_multi(args: &[Complex64], q: Complex64, tol: &Tolerance) -> Result<SeriesValue> {
    check_base(q)?;
    let mut value = Complex64::new(1.0, 0.0);
    let mut terms = 0;
    let mut rel_tail = 0.0;
    for &a in args {
        let f = qpoch_inf(a, q, tol)?;
        value *= f.value;
        terms += f.terms_used;
        let m = f.value.norm();
        if m > 0.0 {
            rel_tail += f.tail_bound / m;
        }
    }
    Ok(SeriesValue {
        value,
        terms_used: terms,
        tail_bound: value.norm() * rel_tail,
    })
}
