use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::mp::context::{pow10, BigReal};

/// Smallest precision at which digit scores are meaningful.
pub const MIN_SCORING_DIGITS: u32 = 20;

/// `(negative, integer part, first `places` fractional digits)`, truncated.
fn truncated_fixed(value: &Float, places: u32, bits: u32) -> (bool, Integer, String) {
    let abs = Float::with_val(bits, value.abs_ref());
    let int_part = abs
        .clone()
        .floor()
        .to_integer()
        .expect("finite value has an integer part");
    let frac = Float::with_val(bits, &abs - &int_part) * pow10(bits, places as i32);
    let digits = frac.floor().to_integer().expect("finite").to_string();
    let padded = format!("{digits:0>width$}", width = places as usize);
    (value.is_sign_negative() && !value.is_zero(), int_part, padded)
}

/// Consecutive matching digits after the decimal point, comparing the
/// truncated fixed-point renderings to `P - 1` places (`P` the smaller of the
/// two precisions). Differing signs or integer parts score 0.
pub fn correct_decimal_digits(x: &BigReal, reference: &BigReal) -> Result<u32> {
    let p = x.ctx().decimal_digits().min(reference.ctx().decimal_digits());
    if p < MIN_SCORING_DIGITS {
        return Err(Error::Precision(format!(
            "digit scoring needs at least {MIN_SCORING_DIGITS} digits, got {p}"
        )));
    }
    if !x.value().is_finite() || !reference.value().is_finite() {
        return Err(Error::InvalidArgument("cannot score a non-finite value".into()));
    }
    let bits = x.ctx().working_bits().max(reference.ctx().working_bits());
    let places = p - 1;
    let (sx, ix, fx) = truncated_fixed(x.value(), places, bits);
    let (sr, ir, fr) = truncated_fixed(reference.value(), places, bits);
    if sx != sr || ix != ir {
        return Ok(0);
    }
    Ok(fx.bytes().zip(fr.bytes()).take_while(|(a, b)| a == b).count() as u32)
}
