//! The chord that bisects a semicircle's area.
//!
//! A chord subtending `θ` cuts off `(R^2/2)(θ - sin θ)`. Half of the unit
//! semicircle is `π/4`; writing `θ = π/2 + φ` the area condition becomes
//! `φ = cos φ`.

use rug::Float;

use crate::error::Result;
use crate::mp::context::{pow10, BigReal, PrecisionContext};
use crate::mp::roots::bracketed_newton;

/// Circular segment area `(R^2/2)(θ - sin θ)`.
pub fn chord_area(theta: &Float, radius: &Float) -> Float {
    let bits = theta.prec().max(radius.prec());
    let segment = Float::with_val(bits, theta - Float::with_val(bits, theta.sin_ref()));
    segment * Float::with_val(bits, radius.square_ref()) / 2u32
}

/// `φ = θ - π/2` where the unit-radius segment area equals `π/4`.
pub fn bertrand_angle(ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let pi = ctx.pi();
    let quarter = Float::with_val(bits, &pi / 4u32);
    let one = Float::with_val(bits, 1);
    let stop = pow10(bits, -(ctx.decimal_digits() as i32) - 8);
    let theta = bracketed_newton(
        |t| {
            let f = chord_area(t, &one) - &quarter;
            let df = (Float::with_val(bits, 1) - Float::with_val(bits, t.cos_ref())) / 2u32;
            (f, df)
        },
        Float::with_val(bits, &pi / 2u32),
        pi.clone(),
        None,
        &stop,
        4 * bits,
        "bertrand",
    )?;
    Ok(BigReal::new(theta - pi / 2u32, *ctx))
}
