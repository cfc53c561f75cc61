//! Regularized incomplete beta function and its inverse.
//!
//! With `t = sin^2 θ`,
//! `B(x; a, b) = 2 ∫_0^{asin √x} sin^(2a-1) θ cos^(2b-1) θ dθ`, which removes
//! the `t^(-1/2)` endpoint singularity at `a = 1/2`. The fixed point is
//! `sqrt(1 - (2 I^{-1}_{1/2}(1/2, 3/2) - 1)^2)`.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::mp::context::{pow10, BigReal, PrecisionContext};
use crate::mp::quadrature::TanhSinh;
use crate::mp::roots::bracketed_newton;

fn check_shape(a: &Float, b: &Float) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && *a > 0 && *b > 0) {
        return Err(Error::InvalidArgument(format!(
            "beta parameters must be positive, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

/// `2 ∫_0^upper sin^(2a-1) θ cos^(2b-1) θ dθ`.
fn beta_angle_integral(upper: &Float, a: &Float, b: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.working_bits();
    if upper.is_zero() {
        return Ok(Float::with_val(bits, 0));
    }
    let pa = Float::with_val(bits, a * 2u32) - 1u32;
    let pb = Float::with_val(bits, b * 2u32) - 1u32;
    let decay = (2.0 * a.to_f64()).min(2.0 * b.to_f64()).min(1.0);
    let zero = Float::with_val(bits, 0);
    let value = TanhSinh::new(ctx.working_digits())
        .with_decay(decay)
        .integrate(
            |theta| {
                let (s, c) = theta.clone().sin_cos(Float::new(bits));
                let left = if pa.is_zero() { Float::with_val(bits, 1) } else { s.pow(&pa) };
                let right = if pb.is_zero() { Float::with_val(bits, 1) } else { c.pow(&pb) };
                left * right
            },
            &zero,
            upper,
        )?;
    Ok(value * 2u32)
}

/// `B(a, b)` by the same quadrature over `[0, π/2]`.
fn complete_beta(a: &Float, b: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let half_pi = ctx.pi() / 2u32;
    beta_angle_integral(&half_pi, a, b, ctx)
}

fn incomplete_ratio(x: &Float, a: &Float, b: &Float, total: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.working_bits();
    if x.is_zero() {
        return Ok(Float::with_val(bits, 0));
    }
    if *x == 1 {
        return Ok(Float::with_val(bits, 1));
    }
    let upper = Float::with_val(bits, x.sqrt_ref()).asin();
    Ok(beta_angle_integral(&upper, a, b, ctx)? / total)
}

/// `I_x(a, b)` for `0 <= x <= 1`, `a, b > 0`.
pub fn reg_incomplete_beta(x: &BigReal, a: &BigReal, b: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let (xf, af, bf) = (x.value(), a.value(), b.value());
    check_shape(af, bf)?;
    if !(*xf >= 0 && *xf <= 1) {
        return Err(Error::InvalidArgument(format!("x = {x} outside [0, 1]")));
    }
    let total = complete_beta(af, bf, ctx)?;
    Ok(BigReal::new(incomplete_ratio(xf, af, bf, &total, ctx)?, *ctx))
}

/// `x` with `I_x(a, b) = p`, by bracketed Newton on `[0, 1]`.
pub fn inverse_reg_incomplete_beta(p: &BigReal, a: &BigReal, b: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let (pf, af, bf) = (Float::with_val(bits, p.value()), a.value(), b.value());
    check_shape(af, bf)?;
    if !(pf >= 0 && pf <= 1) {
        return Err(Error::InvalidArgument(format!("p = {p} outside [0, 1]")));
    }
    if pf.is_zero() || pf == 1 {
        return Ok(BigReal::new(pf, *ctx));
    }
    let total = complete_beta(af, bf, ctx)?;
    let am1 = Float::with_val(bits, af - 1u32);
    let bm1 = Float::with_val(bits, bf - 1u32);
    let stop = pow10(bits, -(ctx.decimal_digits() as i32) - 5);
    let mut failure = None;
    let root = bracketed_newton(
        |x| {
            let value = match incomplete_ratio(x, af, bf, &total, ctx) {
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    return (Float::with_val(bits, 0), Float::with_val(bits, 1));
                }
            };
            let density = Float::with_val(bits, x.pow(&am1))
                * Float::with_val(bits, Float::with_val(bits, 1 - x).pow(&bm1))
                / &total;
            (value - &pf, density)
        },
        Float::with_val(bits, 0),
        Float::with_val(bits, 1),
        None,
        &stop,
        4 * bits,
        "inverse incomplete beta",
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(BigReal::new(root?, *ctx))
}

/// The inverse point `x*` with `I_{x*}(1/2, 3/2) = 1/2`.
pub fn beta_median_point(ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let half = BigReal::new(Float::with_val(bits, 0.5), *ctx);
    let three_halves = BigReal::new(Float::with_val(bits, 1.5), *ctx);
    inverse_reg_incomplete_beta(&half, &half, &three_halves, ctx)
}

/// `sqrt(1 - (2 x* - 1)^2)`.
pub fn dottie_via_beta(ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let x = beta_median_point(ctx)?;
    let shifted = Float::with_val(bits, x.value() * 2u32) - 1u32;
    let value = (Float::with_val(bits, 1) - shifted.square()).sqrt();
    Ok(BigReal::new(value, *ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::oracle::dottie_newton;

    fn r(v: f64, ctx: PrecisionContext) -> BigReal {
        BigReal::from_f64(v, ctx)
    }

    #[test]
    fn endpoints_and_normalization() {
        let ctx = PrecisionContext::new(30).unwrap();
        let (a, b) = (r(0.5, ctx), r(1.5, ctx));
        assert!(reg_incomplete_beta(&r(0.0, ctx), &a, &b, &ctx).unwrap().value().is_zero());
        assert_eq!(reg_incomplete_beta(&r(1.0, ctx), &a, &b, &ctx).unwrap().to_f64(), 1.0);
        let total = complete_beta(a.value(), b.value(), &ctx).unwrap();
        let half_pi = BigReal::new(ctx.pi() / 2u32, ctx);
        assert!(BigReal::new(total, ctx).agrees_with(&half_pi));
        assert!(reg_incomplete_beta(&r(1.5, ctx), &a, &b, &ctx).is_err());
        assert!(reg_incomplete_beta(&r(0.5, ctx), &r(-1.0, ctx), &b, &ctx).is_err());
    }

    #[test]
    fn matches_closed_form_for_half_three_halves() {
        // I_x(1/2, 3/2) = (2/π)(asin √x + √(x(1-x)))
        let ctx = PrecisionContext::new(30).unwrap();
        let bits = ctx.working_bits();
        let (a, b) = (r(0.5, ctx), r(1.5, ctx));
        for x in [0.01, 0.1, 0.3, 0.5, 0.8, 0.99] {
            let xf = Float::with_val(bits, x);
            let closed = (Float::with_val(bits, xf.sqrt_ref()).asin()
                + Float::with_val(bits, &xf * Float::with_val(bits, 1 - &xf)).sqrt())
                * 2u32
                / ctx.pi();
            let v = reg_incomplete_beta(&r(x, ctx), &a, &b, &ctx).unwrap();
            assert!(v.agrees_with(&BigReal::new(closed, ctx)), "x = {x}");
        }
    }

    #[test]
    fn other_shapes_against_gamma_ratio() {
        // I_x(2, 3) = 6x^2 - 8x^3 + 3x^4; I_x(1/4, 1/2) checked at x = 1 normalisation
        let ctx = PrecisionContext::new(25).unwrap();
        let x = 0.35f64;
        let v = reg_incomplete_beta(&r(x, ctx), &r(2.0, ctx), &r(3.0, ctx), &ctx).unwrap();
        let poly = 6.0 * x * x - 8.0 * x.powi(3) + 3.0 * x.powi(4);
        assert!((v.to_f64() - poly).abs() < 1e-15);
        let bits = ctx.working_bits();
        let (a, b) = (Float::with_val(bits, 0.25), Float::with_val(bits, 0.5));
        let total = complete_beta(&a, &b, &ctx).unwrap();
        let lg = |z: &Float| Float::with_val(bits, z.gamma_ref());
        let expected = lg(&a) * lg(&b) / lg(&Float::with_val(bits, &a + &b));
        assert!(BigReal::new(total, ctx).agrees_with(&BigReal::new(expected, ctx)));
    }

    #[test]
    fn strictly_increasing() {
        let ctx = PrecisionContext::new(20).unwrap();
        let (a, b) = (r(0.5, ctx), r(1.5, ctx));
        let values: Vec<BigReal> = (1..20)
            .map(|i| reg_incomplete_beta(&r(i as f64 / 20.0, ctx), &a, &b, &ctx).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn median_point_and_fixed_point() {
        let ctx = PrecisionContext::new(32).unwrap();
        let x = beta_median_point(&ctx).unwrap();
        assert!(x.to_f64() > 0.0 && x.to_f64() < 1.0);
        assert!((x.to_f64() - 0.163_193_985_408_392_6).abs() < 1e-15);
        let back = reg_incomplete_beta(&x, &r(0.5, ctx), &r(1.5, ctx), &ctx).unwrap();
        assert!(back.agrees_with(&r(0.5, ctx)));
        let d = dottie_via_beta(&ctx).unwrap();
        assert_eq!(d.to_decimal_string(), "0.73908513321516064165531208767387");
        assert!(d.agrees_with(&dottie_newton(&ctx).unwrap()));
    }
}
