use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::is_integer;

/// Lanczos approximation with `g = 7`, `n = 9`; relative error below
/// `1e-14` for `Re z ≥ 1/2`.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex gamma function; the left half-plane goes through the
/// reflection formula `Γ(z)Γ(1-z) = π / sin(πz)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_integer(z) && z.re.round() <= 0.0 {
        return Err(Error::PoleError {
            index: z.re.round() as i64,
        });
    }
    if is_integer(z) && z.re <= 171.0 {
        let n = z.re.round() as u32;
        return Ok(Complex64::new((1..n).map(f64::from).product(), 0.0));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        return Ok(PI / (s * gamma(1.0 - z)?));
    }
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * a)
}

/// `1/Γ(z)`, zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    match gamma(z) {
        Ok(g) => 1.0 / g,
        Err(_) => Complex64::new(0.0, 0.0),
    }
}
