use num_complex::Complex64;
use qconnect::borel::{f_resummed, g_closed_form};
use qconnect::classical::{bessel_j, hankel, HankelKind};
use qconnect::connection::{c_coeffs, h_nu, j_minus, j_plus, z_at_infinity};
use qconnect::qbessel::{j_q_bessel, QBesselKind};
use qconnect::qseries::{q_gamma, qpoch_finite, qpoch_inf, rphis, theta};
use qconnect::{Error, Nome, SeriesValue, Tolerance};
use serde::Serialize;

use crate::args::{EvalArgs, Function};
use crate::format::{fmt_complex, fmt_real, Num};

/// A value with the series diagnostics when the evaluator reports them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub terms_used: Option<usize>,
    pub tail_bound: Option<f64>,
}

impl From<SeriesValue> for Evaluation {
    fn from(s: SeriesValue) -> Self {
        Evaluation {
            value: s.value,
            terms_used: Some(s.terms_used),
            tail_bound: Some(s.tail_bound),
        }
    }
}

impl From<Complex64> for Evaluation {
    fn from(value: Complex64) -> Self {
        Evaluation {
            value,
            terms_used: None,
            tail_bound: None,
        }
    }
}

pub fn tolerance(tol: Option<f64>) -> Result<Tolerance, Error> {
    let mut t = Tolerance::default();
    if let Some(eps) = tol {
        t.eps_rel = eps;
    }
    t.validate()?;
    Ok(t)
}

/// Base `q`: `--q` verbatim, else `p²`, else `0.25`.
fn base_q(a: &EvalArgs) -> Complex64 {
    match (a.q, a.p) {
        (Some(q), _) => q,
        (None, Some(p)) => p * p,
        _ => Complex64::new(0.25, 0.0),
    }
}

/// Nome: `--p`, else the principal root of `--q`, else `0.5`.
fn nome(a: &EvalArgs) -> Result<Nome, Error> {
    match (a.p, a.q) {
        (Some(p), _) => Nome::new(p),
        (None, Some(q)) => Nome::from_q(q),
        _ => Nome::real(0.5),
    }
}

pub fn evaluate(a: &EvalArgs) -> Result<Evaluation, Error> {
    let tol = tolerance(a.tol)?;
    let x = a.x;
    let nu = a.nu;
    let lambda = a.lambda;
    Ok(match a.function {
        Function::Theta => theta(base_q(a), x, &tol)?.into(),
        Function::Qpoch => match a.kmax {
            Some(n) => qpoch_finite(x, base_q(a), n).into(),
            None => qpoch_inf(x, base_q(a), &tol)?.into(),
        },
        Function::Qgamma => {
            let q = base_q(a);
            if q.im != 0.0 {
                return Err(Error::InvalidBase { modulus: q.norm() });
            }
            q_gamma(q.re, x, &tol)?.into()
        }
        Function::Rphis => rphis(&a.upper, &a.lower, base_q(a), x, &tol)?.into(),
        Function::J1 => j_q_bessel(QBesselKind::J1, nu, &nome(a)?, x, &tol)?.into(),
        Function::J2 => j_q_bessel(QBesselKind::J2, nu, &nome(a)?, x, &tol)?.into(),
        Function::J3 => j_q_bessel(QBesselKind::J3, nu, &nome(a)?, x, &tol)?.into(),
        Function::G => g_closed_form(nu, &nome(a)?, x, &tol)?.into(),
        Function::F => f_resummed(nu, &nome(a)?, x, &tol)?.into(),
        Function::Z => z_at_infinity(nu, &nome(a)?, x, &tol)?.into(),
        Function::Hnu => h_nu(nu, &nome(a)?, x, &tol)?.into(),
        Function::Jplus => j_plus(nu, lambda, &nome(a)?, x, &tol)?.into(),
        Function::Jminus => j_minus(nu, lambda, &nome(a)?, x, &tol)?.into(),
        Function::Cplus => c_coeffs(nu, lambda, &nome(a)?, x, &tol)?.c_plus.into(),
        Function::Cminus => c_coeffs(nu, lambda, &nome(a)?, x, &tol)?.c_minus.into(),
        Function::Besselj => bessel_j(nu, x, &tol)?.into(),
        Function::Hankel1 => hankel(HankelKind::H1, nu, x, &tol)?.into(),
        Function::Hankel2 => hankel(HankelKind::H2, nu, x, &tol)?.into(),
    })
}

#[derive(Serialize)]
struct JsonComplex {
    re: Num,
    im: Num,
}

#[derive(Serialize)]
struct JsonEvaluation<'a> {
    #[serde(rename = "fn")]
    function: &'a str,
    value: JsonComplex,
    terms_used: Option<usize>,
    tail_bound: Option<Num>,
}

pub fn render(name: &str, e: &Evaluation, json: bool) -> String {
    if json {
        let j = JsonEvaluation {
            function: name,
            value: JsonComplex {
                re: Num(e.value.re),
                im: Num(e.value.im),
            },
            terms_used: e.terms_used,
            tail_bound: e.tail_bound.map(Num),
        };
        return serde_json::to_string(&j).expect("serializable evaluation") + "\n";
    }
    let terms = e.terms_used.map_or_else(|| "n/a".to_string(), |n| n.to_string());
    let tail = e.tail_bound.map_or_else(|| "n/a".to_string(), fmt_real);
    format!(
        "value: {}\nterms_used: {terms}\ntail_bound: {tail}\n",
        fmt_complex(e.value)
    )
}
