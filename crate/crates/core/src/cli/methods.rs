//! Method identifiers accepted by `compute` and their default truncations.

use std::fmt;
use std::str::FromStr;

use crate::connections::{
    bertrand_angle, dottie_bessel_partial, dottie_via_beta, dottie_via_kepler,
    kapteyn_integral_partial, BesselSeriesVariant,
};
use crate::error::{Error, Result};
use crate::exact::kaplan_coefficients_reversion;
use crate::mp::oracle::{dottie_cosine_iteration, dottie_newton, dottie_newton_counted};
use crate::mp::{eval_kaplan_partial, MethodResult, PrecisionContext};

/// Largest Kaplan truncation the CLI will build exact coefficients for.
pub const KAPLAN_MAX_TERMS: u64 = 64;
pub const KAPLAN_DEFAULT_TERMS: u64 = 16;
pub const BESSEL_DEFAULT_TERMS: u64 = 200;
pub const KAPTEYN_DEFAULT_TERMS: u64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Newton,
    CosineIteration,
    Kaplan,
    Kepler,
    Beta,
    Bertrand,
    Bessel,
    BesselAsPrinted,
    Kapteyn,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Newton,
        Method::CosineIteration,
        Method::Kaplan,
        Method::Kepler,
        Method::Beta,
        Method::Bertrand,
        Method::Bessel,
        Method::BesselAsPrinted,
        Method::Kapteyn,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Newton => "newton",
            Method::CosineIteration => "cosine_iteration",
            Method::Kaplan => "kaplan",
            Method::Kepler => "kepler",
            Method::Beta => "beta",
            Method::Bertrand => "bertrand",
            Method::Bessel => "bessel",
            Method::BesselAsPrinted => "bessel_as_printed",
            Method::Kapteyn => "kapteyn",
        }
    }

    /// Truncation used when `--terms` is absent.
    pub fn default_terms(&self) -> u64 {
        match self {
            Method::Kaplan => KAPLAN_DEFAULT_TERMS,
            Method::Bessel | Method::BesselAsPrinted => BESSEL_DEFAULT_TERMS,
            Method::Kapteyn => KAPTEYN_DEFAULT_TERMS,
            _ => super::args::DEFAULT_TERMS,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// Quadrature points for the Kapteyn integral with `terms` terms: 16-point
/// panels no wider than about 8 radians of the fastest oscillation.
pub fn kapteyn_points(terms: u32) -> usize {
    let k = 4.0 * terms.max(1) as f64 + 3.0;
    let panels = (std::f64::consts::PI * 2.0 * k / 8.0).ceil() as usize;
    (panels * 16).max(64)
}

fn to_u32(terms: u64) -> Result<u32> {
    u32::try_from(terms).map_err(|_| Error::InvalidArgument(format!("--terms {terms} too large")))
}

/// Runs one method and attaches its error against the oracle.
pub fn compute(method: Method, terms: Option<u64>, ctx: &PrecisionContext) -> Result<MethodResult> {
    let n = terms.unwrap_or_else(|| method.default_terms());
    let oracle = || dottie_newton(ctx);
    let closed = |value| -> Result<MethodResult> {
        Ok(MethodResult::new(method.as_str(), value, 0).with_error_against(&oracle()?))
    };
    match method {
        Method::Newton => {
            let (value, steps) = dottie_newton_counted(ctx)?;
            let oracle = value.clone();
            Ok(MethodResult::new("newton", value, steps as u64).with_error_against(&oracle))
        }
        Method::CosineIteration => dottie_cosine_iteration(ctx, to_u32(n)?),
        Method::Kaplan => {
            if n > KAPLAN_MAX_TERMS {
                return Err(Error::InvalidArgument(format!(
                    "kaplan supports at most {KAPLAN_MAX_TERMS} terms, got {n}"
                )));
            }
            let n = to_u32(n)?;
            let table = kaplan_coefficients_reversion((2 * n).max(2) - 1)?;
            eval_kaplan_partial(&table, n, ctx)
        }
        Method::Kepler => closed(dottie_via_kepler(ctx)?),
        Method::Beta => closed(dottie_via_beta(ctx)?),
        Method::Bertrand => closed(bertrand_angle(ctx)?),
        Method::Bessel => dottie_bessel_partial(to_u32(n)?, BesselSeriesVariant::Corrected, ctx),
        Method::BesselAsPrinted => {
            dottie_bessel_partial(to_u32(n)?, BesselSeriesVariant::AsPrinted, ctx)
        }
        Method::Kapteyn => {
            let n = to_u32(n)?;
            let value = kapteyn_integral_partial(n, kapteyn_points(n), ctx)?;
            Ok(MethodResult::new("kapteyn", value, n as u64).with_error_against(&oracle()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::BigReal;

    #[test]
    fn identifiers_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("secant".parse::<Method>().is_err());
    }

    #[test]
    fn closed_routes_agree() {
        let ctx = PrecisionContext::new(20).unwrap();
        for m in [Method::Newton, Method::Kepler, Method::Beta, Method::Bertrand] {
            let r = compute(m, None, &ctx).unwrap();
            assert!(r.abs_error.unwrap() <= BigReal::new(ctx.tolerance(), ctx), "{m}");
        }
        assert!(compute(Method::Kaplan, Some(65), &ctx).is_err());
    }
}
