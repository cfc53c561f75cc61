//! Kepler's equation `M = E - e sin E`.
//!
//! At `e = 1`, `M = π/2` the root satisfies `sin E = E - π/2`, and
//! `cos(sin E) = cos(E - π/2) = sin E`, so `sin E` is the fixed point.

use rug::Float;

use crate::error::{Error, Result};
use crate::mp::context::{pow10, BigReal, PrecisionContext};
use crate::mp::roots::bracketed_newton;

#[derive(Debug, Clone, PartialEq)]
pub struct KeplerState {
    pub mean_anomaly: BigReal,
    pub eccentricity: BigReal,
    pub eccentric_anomaly: BigReal,
}

impl KeplerState {
    /// `|E - e sin E - M|`.
    pub fn residual(&self) -> BigReal {
        let e = self.eccentric_anomaly.value();
        let bits = e.prec();
        let r = Float::with_val(bits, e - Float::with_val(bits, e.sin_ref()) * self.eccentricity.value())
            - self.mean_anomaly.value();
        BigReal::new(r.abs(), self.eccentric_anomaly.ctx())
    }
}

/// Eccentric anomaly `E` for eccentricity `0 <= e <= 1` and mean anomaly `M`.
///
/// Newton from `E0 = M + e sign(sin M)`, safeguarded by bisection on
/// `[M - e, M + e]`, which always brackets the root because
/// `|E - M| = e |sin E| <= e`.
pub fn kepler_solve(e: &BigReal, m: &BigReal, ctx: &PrecisionContext) -> Result<KeplerState> {
    let bits = ctx.working_bits();
    let ef = Float::with_val(bits, e.value());
    if !(0..=1).contains(&ef) || !ef.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "eccentricity {e} outside [0, 1]"
        )));
    }
    let mf = Float::with_val(bits, m.value());
    if !mf.is_finite() {
        return Err(Error::InvalidArgument("mean anomaly must be finite".into()));
    }
    let state = |anomaly: Float| KeplerState {
        mean_anomaly: BigReal::new(mf.clone(), *ctx),
        eccentricity: BigReal::new(ef.clone(), *ctx),
        eccentric_anomaly: BigReal::new(anomaly, *ctx),
    };
    if ef.is_zero() {
        return Ok(state(mf.clone()));
    }

    let sin_m = Float::with_val(bits, mf.sin_ref());
    let start = if sin_m.is_zero() {
        mf.clone()
    } else if sin_m.is_sign_negative() {
        Float::with_val(bits, &mf - &ef)
    } else {
        Float::with_val(bits, &mf + &ef)
    };
    let stop = pow10(bits, -(ctx.decimal_digits() as i32) - 8);
    let lo = Float::with_val(bits, &mf - &ef);
    let hi = Float::with_val(bits, &mf + &ef);
    let root = bracketed_newton(
        |x| {
            let (s, c) = x.clone().sin_cos(Float::new(bits));
            let f = Float::with_val(bits, x - Float::with_val(bits, &ef * &s)) - &mf;
            let df = Float::with_val(bits, 1) - Float::with_val(bits, &ef * &c);
            (f, df)
        },
        lo,
        hi,
        Some(start),
        &stop,
        4 * bits,
        "kepler",
    )?;
    Ok(state(root))
}

/// `sin E` for `E - sin E = π/2`.
pub fn dottie_via_kepler(ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let e = BigReal::new(Float::with_val(bits, 1), *ctx);
    let m = BigReal::new(ctx.pi() / 2u32, *ctx);
    let state = kepler_solve(&e, &m, ctx)?;
    let sin = Float::with_val(bits, state.eccentric_anomaly.value().sin_ref());
    Ok(BigReal::new(sin, *ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::oracle::dottie_newton;
    use proptest::prelude::*;

    #[test]
    fn circular_orbit_is_identity() {
        let ctx = PrecisionContext::new(20).unwrap();
        let m = BigReal::from_f64(2.5, ctx);
        let s = kepler_solve(&BigReal::from_f64(0.0, ctx), &m, &ctx).unwrap();
        assert_eq!(s.eccentric_anomaly, m);
    }

    #[test]
    fn moderate_eccentricity_golden() {
        let ctx = PrecisionContext::new(30).unwrap();
        let s = kepler_solve(&BigReal::from_f64(0.5, ctx), &BigReal::from_f64(1.0, ctx), &ctx).unwrap();
        // independent 50-digit root
        let golden = BigReal::parse("1.498701133517848314057985497256", ctx).unwrap();
        assert!(s.eccentric_anomaly.agrees_with(&golden), "{}", s.eccentric_anomaly);
    }

    #[test]
    fn parabolic_case_gives_fixed_point() {
        let ctx = PrecisionContext::new(32).unwrap();
        let d = dottie_via_kepler(&ctx).unwrap();
        assert_eq!(d.to_decimal_string(), "0.73908513321516064165531208767387");
        assert!(d.agrees_with(&dottie_newton(&ctx).unwrap()));
        let residual = Float::with_val(ctx.working_bits(), d.value().cos_ref()) - d.value();
        assert!(residual.abs() < ctx.tolerance());

        let e = BigReal::from_f64(1.0, ctx);
        let m = BigReal::new(ctx.pi() / 2u32, ctx);
        let state = kepler_solve(&e, &m, &ctx).unwrap();
        let shifted = BigReal::new(Float::with_val(ctx.working_bits(), state.eccentric_anomaly.value() - m.value()), ctx);
        assert!(shifted.agrees_with(&d));
        assert!((state.eccentric_anomaly.to_f64() - 2.309_881_460_010_057).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_eccentricity() {
        let ctx = PrecisionContext::new(20).unwrap();
        let m = BigReal::from_f64(1.0, ctx);
        assert!(kepler_solve(&BigReal::from_f64(1.5, ctx), &m, &ctx).is_err());
        assert!(kepler_solve(&BigReal::from_f64(-0.1, ctx), &m, &ctx).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn residual_below_certificate(e in 0.0f64..=1.0, m in 0.0f64..std::f64::consts::TAU) {
            let ctx = PrecisionContext::new(25).unwrap();
            let s = kepler_solve(&BigReal::from_f64(e, ctx), &BigReal::from_f64(m, ctx), &ctx).unwrap();
            let bound = pow10(ctx.working_bits(), -(ctx.decimal_digits() as i32) - 5);
            prop_assert!(*s.residual().value() < bound, "e = {} M = {}: {}", e, m, s.residual());
        }
    }
}
