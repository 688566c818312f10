use num_complex::Complex64;

use crate::error::{Error, Result};

/// `x^ν = exp(ν·(ln|x| + i·Arg x))` with `Arg x ∈ (-π, π]`.
///
/// At `x = 0` the result is 0 for `Re ν > 0`; otherwise the power is
/// undefined.
pub fn principal_power(x: Complex64, nu: Complex64) -> Result<Complex64> {
    if x == Complex64::new(0.0, 0.0) {
        return if nu.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::ZeroArgument)
        };
    }
    // -0.0 imaginary parts would put Arg at -π
    let x = if x.im == 0.0 { Complex64::new(x.re, 0.0) } else { x };
    Ok((nu * x.ln()).exp())
}

/// True when `z` is an integer to within a few ulps.
pub fn is_integer(z: Complex64) -> bool {
    z.im.abs() <= 1e-14 * (1.0 + z.re.abs()) && (z.re - z.re.round()).abs() <= 1e-12 * (1.0 + z.re.abs())
}

/// True when `x` sits on the cut `(-∞, 0)` of the principal logarithm.
pub fn on_negative_axis(x: Complex64) -> bool {
    x.im == 0.0 && x.re < 0.0
}
