//! The Newton oracle for `cos x = x` and the plain cosine iteration.

use rug::Float;

use super::context::{pow10, BigReal, PrecisionContext};
use super::result::MethodResult;
use crate::error::{Error, Result};

/// Iteration budget `10 log2(P) + 50`.
fn newton_budget(ctx: &PrecisionContext) -> u32 {
    (10.0 * (ctx.decimal_digits() as f64).log2()).ceil() as u32 + 50
}

/// Root of `x - cos x` by Newton from `x0 = 3/4`.
///
/// The returned value satisfies `|x - cos x| < 10^(-P-5)`.
pub fn dottie_newton(ctx: &PrecisionContext) -> Result<BigReal> {
    dottie_newton_counted(ctx).map(|(x, _)| x)
}

/// Like [`dottie_newton`], also reporting the number of Newton steps.
pub fn dottie_newton_counted(ctx: &PrecisionContext) -> Result<(BigReal, u32)> {
    let bits = ctx.working_bits();
    let certificate = pow10(bits, -(ctx.decimal_digits() as i32) - 5);
    // stop two digits above the working ulp so rounding noise cannot stall us
    let stop = pow10(bits, -(ctx.working_digits() as i32) + 2);
    let budget = newton_budget(ctx);

    let mut x = Float::with_val(bits, 0.75);
    for iteration in 1..=budget {
        let (sin, cos) = x.clone().sin_cos(Float::new(bits));
        let residual = Float::with_val(bits, &x - &cos);
        if residual.clone().abs() <= stop {
            if residual.abs() >= certificate {
                break;
            }
            return Ok((BigReal::new(x, *ctx), iteration - 1));
        }
        let slope = Float::with_val(bits, 1 + &sin);
        x -= residual / slope;
    }
    Err(Error::NonConvergence {
        method: "newton",
        iterations: budget,
    })
}

/// `x <- cos x` from `x0 = 1`, `max_iter` times.
///
/// The error against the Newton oracle is attached; nothing guarantees the
/// iteration reached `P` digits.
pub fn dottie_cosine_iteration(ctx: &PrecisionContext, max_iter: u32) -> Result<MethodResult> {
    if max_iter < 1 {
        return Err(Error::InvalidArgument("max_iter must be >= 1".into()));
    }
    let oracle = dottie_newton(ctx)?;
    Ok(cosine_iteration_against(ctx, max_iter, &oracle))
}

pub(crate) fn cosine_iteration_against(
    ctx: &PrecisionContext,
    iterations: u32,
    oracle: &BigReal,
) -> MethodResult {
    let mut x = Float::with_val(ctx.working_bits(), 1);
    for _ in 0..iterations {
        x.cos_mut();
    }
    MethodResult::new("cosine_iteration", BigReal::new(x, *ctx), iterations as u64)
        .with_error_against(oracle)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIGITS_32: &str = "0.73908513321516064165531208767387";

    #[test]
    fn reproduces_reference_digits() {
        let ctx = PrecisionContext::new(32).unwrap();
        let d = dottie_newton(&ctx).unwrap();
        assert_eq!(d.to_decimal_string(), DIGITS_32);
        let ctx12 = PrecisionContext::new(12).unwrap();
        let d12 = dottie_newton(&ctx12).unwrap();
        let sin = BigReal::new(d12.value().clone().sin(), ctx12);
        let tan = BigReal::new(d12.value().clone().tan(), ctx12);
        assert_eq!(sin.to_decimal_string(), "0.673612029183");
        assert_eq!(tan.to_decimal_string(), "0.911413312094");
    }

    #[test]
    fn residual_certificate_and_quadratic_count() {
        for p in [32u32, 64, 128, 256] {
            let ctx = PrecisionContext::new(p).unwrap();
            let (d, steps) = dottie_newton_counted(&ctx).unwrap();
            let x = d.value();
            let r = Float::with_val(ctx.working_bits(), x - x.clone().cos()).abs();
            assert!(r < pow10(ctx.working_bits(), -(p as i32) - 5), "P = {p}");
            assert!(steps <= (p as f64).log2().ceil() as u32 + 4, "P = {p}: {steps} steps");
        }
    }

    #[test]
    fn doubling_precision_keeps_digits() {
        for p in [32u32, 64, 128] {
            let a = dottie_newton(&PrecisionContext::new(p).unwrap()).unwrap();
            let b = dottie_newton(&PrecisionContext::new(2 * p).unwrap()).unwrap();
            let b_at_p = BigReal::new(b.value().clone(), a.ctx());
            let (sa, sb) = (a.to_decimal_string(), b_at_p.to_decimal_string());
            assert_eq!(sa[..sa.len() - 1], sb[..sb.len() - 1], "P = {p}");
        }
    }

    #[test]
    fn one_cosine_step() {
        let ctx = PrecisionContext::new(20).unwrap();
        let r = dottie_cosine_iteration(&ctx, 1).unwrap();
        assert_eq!(r.terms, 1);
        assert!((r.value.to_f64() - 0.540_302_305_868_139_8).abs() < 1e-15);
        assert!(dottie_cosine_iteration(&ctx, 0).is_err());
    }

    #[test]
    fn linear_rate_is_sine_of_fixed_point() {
        let ctx = PrecisionContext::new(40).unwrap();
        let oracle = dottie_newton(&ctx).unwrap();
        let e50 = cosine_iteration_against(&ctx, 50, &oracle).abs_error.unwrap();
        let e51 = cosine_iteration_against(&ctx, 51, &oracle).abs_error.unwrap();
        let ratio = e51.to_f64() / e50.to_f64();
        assert!((ratio - 0.673_612_029_183).abs() < 1e-4, "ratio {ratio}");
    }

    #[test]
    fn iterations_for_ten_digits() {
        let ctx = PrecisionContext::new(30).unwrap();
        let oracle = dottie_newton(&ctx).unwrap();
        let needed = (1..200)
            .find(|&k| cosine_iteration_against(&ctx, k, &oracle).abs_error.unwrap().to_f64() < 1e-10)
            .unwrap();
        // the rate estimate ceil(10 ln 10 / ln(1/sin D)) = 59 ignores the
        // initial error |1 - D| ~ 0.26; an independent 40-digit run gives 55
        assert_eq!(needed, 55);
    }
}
