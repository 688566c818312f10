use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{Nome, Residual};

/// Largest order the coefficient maps accept; `|p|^{-n²/2}` leaves the
/// double range beyond it for moderate `p`.
pub const MAX_ORDER: usize = 64;

/// Truncated power series `a_0 + a_1 t + … + a_N t^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSeries {
    pub coeffs: Vec<Complex64>,
}

impl FormalSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a formal series needs at least a_0");
        FormalSeries { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `σ_p^l`: `a_n ↦ p^{ln} a_n` for any integer `l`.
    pub fn sigma(&self, nome: &Nome, l: i64) -> FormalSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| a * nome.p_powi(l * n as i64))
            .collect();
        FormalSeries { coeffs }
    }

    /// Multiplication by `t^m`; the order grows by `m`.
    pub fn shift(&self, m: usize) -> FormalSeries {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        coeffs.extend_from_slice(&self.coeffs);
        FormalSeries { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Horner evaluation at `t`.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * t + a)
    }
}

fn triangular(n: usize) -> i64 {
    (n as i64) * (n as i64 - 1) / 2
}

fn checked(coeffs: Vec<Complex64>) -> Result<FormalSeries> {
    if coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(FormalSeries { coeffs })
    } else {
        Err(Error::ScaleOverflow)
    }
}

fn check_order(f: &FormalSeries) -> Result<()> {
    if f.order() > MAX_ORDER {
        return Err(Error::ScaleOverflow);
    }
    Ok(())
}

/// q-Borel transform `a_n ↦ a_n p^{-n(n-1)/2}`.
pub fn q_borel(f: &FormalSeries, nome: &Nome) -> Result<FormalSeries> {
    check_order(f)?;
    checked(
        f.coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| a * nome.p_powi(-triangular(n)))
            .collect(),
    )
}

/// Coefficient form of the q-Laplace transform on monomials,
/// `τ^n ↦ p^{n(n-1)/2} t^n`.
pub fn q_laplace_formal(g: &FormalSeries, nome: &Nome) -> Result<FormalSeries> {
    check_order(g)?;
    checked(
        g.coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| a * nome.p_powi(triangular(n)))
            .collect(),
    )
}

/// `L_p(B_p f)` at coefficient level.
pub fn q_borel_inverse_roundtrip(f: &FormalSeries, nome: &Nome) -> Result<FormalSeries> {
    q_laplace_formal(&q_borel(f, nome)?, nome)
}

/// Largest coefficient-wise relative difference between
/// `B_p(t^m σ_p^l f)` and `p^{-m(m-1)/2} τ^m σ_p^{l-m} B_p f`.
///
/// Coefficients of Borel images grow like `|p|^{-n²/2}`, so the comparison
/// is relative to the larger of the two coefficients.
pub fn borel_operational_check(m: usize, l: usize, f: &FormalSeries, nome: &Nome) -> Result<f64> {
    let lhs = q_borel(&f.sigma(nome, l as i64).shift(m), nome)?;
    let rhs = q_borel(f, nome)?
        .sigma(nome, l as i64 - m as i64)
        .shift(m)
        .scale(nome.p_powi(-triangular(m)));
    let mut worst: f64 = 0.0;
    for (a, b) in lhs.coeffs.iter().zip(&rhs.coeffs) {
        let scale = a.norm().max(b.norm());
        if scale > 0.0 {
            worst = worst.max((a - b).norm() / scale);
        }
    }
    Ok(worst)
}

fn b4_parts(nu: Complex64, nome: &Nome) -> (Complex64, Complex64) {
    let two = nome.p_pow(2.0 * nu + 1.0);
    let one = nome.p_pow(nu + 1.0) * (nome.p_pow(nu) + nome.p_pow(-nu));
    (two, one)
}

/// Coefficients `a_0 = 1, a_1, …, a_N` of the formal solution of
///
/// ```text
/// {p^{2ν+5} t² σ_p² + p^{ν+2}(p^ν + p^{-ν}) t σ_p - σ_p + 1} f = 0,
/// ```
///
/// from `(1 - p^n) a_n = -p^{2ν+2n+1} a_{n-2} - p^{ν+n+1}(p^ν + p^{-ν}) a_{n-1}`.
pub fn f_coeffs_recurrence(nu: Complex64, nome: &Nome, order: usize) -> Result<FormalSeries> {
    if order > MAX_ORDER {
        return Err(Error::ScaleOverflow);
    }
    let (c2, c1) = b4_parts(nu, nome);
    let mut a = vec![Complex64::new(1.0, 0.0)];
    for n in 1..=order {
        let pn = nome.p_powi(n as i64);
        let d = 1.0 - pn;
        if d.norm() <= 16.0 * f64::EPSILON {
            return Err(Error::DegenerateRecurrence { index: n });
        }
        let mut rhs = -c1 * pn * a[n - 1];
        if n >= 2 {
            rhs -= c2 * pn * pn * a[n - 2];
        }
        a.push(rhs / d);
    }
    checked(a)
}

/// Relative residual of the t^n coefficient of the equation above for each
/// `n = 0..=N`.
pub fn b4_coefficient_residuals(nu: Complex64, nome: &Nome, f: &FormalSeries) -> Vec<f64> {
    let (c2, c1) = b4_parts(nu, nome);
    let a = &f.coeffs;
    (0..a.len())
        .map(|n| {
            let pn = nome.p_powi(n as i64);
            let mut terms = vec![(1.0 - pn) * a[n]];
            if n >= 1 {
                terms.push(c1 * pn * a[n - 1]);
            }
            if n >= 2 {
                terms.push(c2 * pn * pn * a[n - 2]);
            }
            Residual::from_terms(&terms).relative()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nome(p: f64) -> Nome {
        Nome::real(p).unwrap()
    }

    #[test]
    fn borel_examples() {
        let n = nome(0.5);
        assert_eq!(
            q_borel(&FormalSeries::from_real(&[1.0]), &n).unwrap().coeffs,
            FormalSeries::from_real(&[1.0]).coeffs
        );
        assert_eq!(
            q_borel(&FormalSeries::from_real(&[1.0, 1.0, 1.0]), &n).unwrap(),
            FormalSeries::from_real(&[1.0, 1.0, 2.0])
        );
    }

    #[test]
    fn roundtrip_examples() {
        let f = FormalSeries::from_real(&[1.0, 2.0, 3.0]);
        assert_eq!(q_borel_inverse_roundtrip(&f, &nome(0.5)).unwrap(), f);
    }

    #[test]
    fn operational_examples() {
        let n = nome(0.5);
        let f = FormalSeries::from_real(&[1.0, -0.5, 0.25, 2.0, 1.5, -3.0]);
        assert_eq!(borel_operational_check(0, 0, &f, &n).unwrap(), 0.0);
        assert!(borel_operational_check(1, 2, &f, &n).unwrap() < 1e-14);
        assert!(borel_operational_check(2, 1, &f, &n).unwrap() < 1e-14);
    }

    #[test]
    fn overflow_guard() {
        let f = FormalSeries::new(vec![Complex64::new(1.0, 0.0); MAX_ORDER + 2]);
        assert_eq!(q_borel(&f, &nome(0.5)), Err(Error::ScaleOverflow));
    }

    #[test]
    fn recurrence_solves_b4() {
        let n = nome(0.5);
        let nu = Complex64::new(0.3, 0.0);
        assert_eq!(
            f_coeffs_recurrence(nu, &n, 0).unwrap().coeffs,
            vec![Complex64::new(1.0, 0.0)]
        );
        let f = f_coeffs_recurrence(nu, &n, 8).unwrap();
        assert!(b4_coefficient_residuals(nu, &n, &f).iter().all(|&r| r < 1e-14));
    }

    #[test]
    fn series_helpers() {
        let n = nome(0.5);
        let f = FormalSeries::from_real(&[1.0, 1.0]);
        assert_eq!(f.sigma(&n, -1), FormalSeries::from_real(&[1.0, 2.0]));
        assert_eq!(f.shift(2), FormalSeries::from_real(&[0.0, 0.0, 1.0, 1.0]));
        assert_eq!(f.eval(Complex64::new(3.0, 0.0)), Complex64::new(4.0, 0.0));
    }
}
