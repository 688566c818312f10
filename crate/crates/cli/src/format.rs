//! Number spelling shared by every output: 17 significant digits in the
//! style of C's `%.17g`, and complex literals `a`, `bi`, `a+bi`, `a-bi`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// `x` with 17 significant digits, trailing zeros removed.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs());
    }
    let fixed = format!("{:.*}", (16 - exp) as usize, x);
    trim_zeros(&fixed).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Complex literal that [`parse_complex`] reads back exactly.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return fmt_real(z.re);
    }
    let im = fmt_real(z.im);
    if im.starts_with('-') {
        format!("{}{}i", fmt_real(z.re), im)
    } else {
        format!("{}+{}i", fmt_real(z.re), im)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseComplexError(pub String);

impl fmt::Display for ParseComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid complex number `{}` (expected a, bi, a+bi or a-bi)", self.0)
    }
}

impl std::error::Error for ParseComplexError {}

fn parse_part(s: &str, whole: &str) -> Result<f64, ParseComplexError> {
    let v = match s {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => f64::from_str(s).map_err(|_| ParseComplexError(whole.into()))?,
    };
    if !v.is_finite() || s.chars().any(|c| c.is_ascii_alphabetic() && c != 'e' && c != 'E') {
        return Err(ParseComplexError(whole.into()));
    }
    Ok(v)
}

/// Reads `a`, `bi`, `a+bi` or `a-bi` with decimal reals.
pub fn parse_complex(s: &str) -> Result<Complex64, ParseComplexError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseComplexError(s.into()));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_part(t, s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = &body[..k];
            if re.is_empty() || re == "+" || re == "-" {
                return Err(ParseComplexError(s.into()));
            }
            Ok(Complex64::new(parse_part(re, s)?, parse_part(&body[k..], s)?))
        }
        None => Ok(Complex64::new(0.0, parse_part(body, s)?)),
    }
}

/// Real number serialized with [`fmt_real`]; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let n = serde_json::Number::from_str(&fmt_real(self.0)).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}
