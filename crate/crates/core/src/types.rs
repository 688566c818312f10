//! Value types shared across the crate: the nome, stopping tolerances and
//! the bundled result of a series evaluation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Base of all q-series in the crate. Stores `p` and derives `q = p²`.
///
/// Fractional powers of `q` are always taken through `p`
/// (`q^a := exp(2a·Log p)`), so half-integer shifts such as `q^{ν/2} = p^ν`
/// never pick up a branch ambiguity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nome {
    p: Complex64,
    q: Complex64,
    log_p: Complex64,
}

impl Nome {
    pub fn new(p: Complex64) -> Result<Self> {
        let m = p.norm();
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::InvalidBase { modulus: m });
        }
        Ok(Nome {
            p,
            q: p * p,
            log_p: p.ln(),
        })
    }

    pub fn real(p: f64) -> Result<Self> {
        Self::new(Complex64::new(p, 0.0))
    }

    /// Builds the nome from `q`, taking `p` as the principal square root.
    pub fn from_q(q: Complex64) -> Result<Self> {
        Self::new(q.sqrt())
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn log_p(&self) -> Complex64 {
        self.log_p
    }

    /// `p^a` on the principal branch of `Log p`.
    pub fn p_pow(&self, a: Complex64) -> Complex64 {
        (a * self.log_p).exp()
    }

    /// `q^a := p^{2a}`.
    pub fn q_pow(&self, a: Complex64) -> Complex64 {
        self.p_pow(2.0 * a)
    }

    /// Integer powers of `p`, exact for dyadic `p`.
    pub fn p_powi(&self, n: i64) -> Complex64 {
        if let Ok(k) = i32::try_from(n) {
            self.p.powi(k)
        } else {
            (self.log_p * n as f64).exp()
        }
    }
}

/// Stopping rule for every series and product evaluator.
///
/// A series stops once `consecutive_small` successive terms satisfy
/// `|term| <= eps_rel·|partial| + eps_abs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps_rel: f64,
    pub eps_abs: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
    /// Minimum q-invariant log-distance to a theta zero spiral before a
    /// connection quantity is evaluated.
    pub spiral_gate: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_rel: 1e-17,
            eps_abs: 1e-300,
            max_terms: 20_000,
            consecutive_small: 3,
            spiral_gate: 1e-3,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps_rel > 0.0 || self.eps_abs > 0.0) || self.eps_rel < 0.0 || self.eps_abs < 0.0 {
            return Err(Error::InvalidTolerance(
                "need eps_rel > 0 or eps_abs > 0, both nonnegative",
            ));
        }
        if self.max_terms < 8 {
            return Err(Error::InvalidTolerance("max_terms must be at least 8"));
        }
        if self.consecutive_small == 0 {
            return Err(Error::InvalidTolerance("consecutive_small must be positive"));
        }
        if !(self.spiral_gate >= 0.0) {
            return Err(Error::InvalidTolerance("spiral_gate must be nonnegative"));
        }
        Ok(())
    }

    pub fn with_spiral_gate(mut self, gate: f64) -> Self {
        self.spiral_gate = gate;
        self
    }

    pub(crate) fn is_small(&self, term: f64, partial: f64) -> bool {
        term <= self.eps_rel * partial + self.eps_abs
    }
}

/// A computed value with the number of terms used and a bound on the
/// truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

impl SeriesValue {
    pub fn exact(value: Complex64) -> Self {
        SeriesValue {
            value,
            terms_used: 0,
            tail_bound: 0.0,
        }
    }
}

/// Left-hand side of an identity evaluated at a point, together with the
/// magnitude of the largest term that entered it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: Complex64,
    pub scale: f64,
}

impl Residual {
    pub fn from_terms(terms: &[Complex64]) -> Self {
        let value = terms.iter().sum();
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        Residual { value, scale }
    }

    /// `|residual| / scale`, with the scale floored at the smallest normal.
    pub fn relative(&self) -> f64 {
        self.value.norm() / self.scale.max(f64::MIN_POSITIVE)
    }
}

/// `a / b` by Smith's scaling, so tiny or huge `|b|` never squares out of
/// range.
pub(crate) fn cdiv(a: Complex64, b: Complex64) -> Complex64 {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        Complex64::new((a.re + a.im * r) / d, (a.im - a.re * r) / d)
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        Complex64::new((a.re * r + a.im) / d, (a.im * r - a.re) / d)
    }
}

/// Running sum implementing the [`Tolerance`] stopping rule.
pub(crate) struct Accumulator<'a> {
    tol: &'a Tolerance,
    sum: Complex64,
    terms: usize,
    small_run: usize,
    last: f64,
    prev: f64,
    abs_sum: f64,
}

impl<'a> Accumulator<'a> {
    pub(crate) fn new(tol: &'a Tolerance) -> Self {
        Accumulator {
            tol,
            sum: Complex64::new(0.0, 0.0),
            terms: 0,
            small_run: 0,
            last: f64::INFINITY,
            prev: f64::INFINITY,
            abs_sum: 0.0,
        }
    }

    /// Adds a term; returns `true` once the stopping rule is met.
    pub(crate) fn push(&mut self, term: Complex64) -> Result<bool> {
        self.push_weighted(term, term.norm())
    }

    /// Adds `term`, judging smallness by `magnitude` (used for symmetric
    /// pairs whose sum may cancel).
    pub(crate) fn push_weighted(&mut self, term: Complex64, magnitude: f64) -> Result<bool> {
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::ScaleOverflow);
        }
        self.sum += term;
        self.terms += 1;
        self.abs_sum += magnitude;
        self.prev = self.last;
        self.last = magnitude;
        if self.tol.is_small(magnitude, self.sum.norm()) {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        if self.small_run >= self.tol.consecutive_small {
            return Ok(true);
        }
        if self.terms >= self.tol.max_terms {
            return Err(Error::MaxTermsExceeded { terms: self.terms });
        }
        Ok(false)
    }

    pub(crate) fn sum(&self) -> Complex64 {
        self.sum
    }

    pub(crate) fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    pub(crate) fn terms(&self) -> usize {
        self.terms
    }

    /// `last / (1 - ratio)` with the ratio estimated from the final two terms.
    pub(crate) fn tail_bound(&self) -> f64 {
        if self.last == 0.0 {
            return 0.0;
        }
        let ratio = self.last / self.prev;
        if ratio.is_finite() && ratio < 1.0 {
            self.last / (1.0 - ratio)
        } else {
            self.last * self.tol.consecutive_small as f64
        }
    }

    pub(crate) fn finish(&self) -> SeriesValue {
        SeriesValue {
            value: self.sum,
            terms_used: self.terms,
            tail_bound: self.tail_bound(),
        }
    }
}
