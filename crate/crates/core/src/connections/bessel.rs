//! Bessel functions of integer order and the Bessel/Kapteyn series for the
//! fixed point.
//!
//! Kepler's equation at `e = 1` expands as `E = M + 2 sum sin(nM)/n J_n(n)`;
//! at `M = π/2` only odd `n` survive with alternating sign, which gives
//!
//! ```text
//! D = 2 sum_{n>=0} [ J_{4n+1}(4n+1)/(4n+1) - J_{4n+3}(4n+3)/(4n+3) ]
//! ```
//!
//! A variant with `J_{4n+1}(4n+3)` in the second term is also carried so the
//! two can be compared numerically.

use std::fmt;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::mp::context::{bits_for_digits, pow10, BigReal, PrecisionContext};
use crate::mp::oracle::dottie_newton;
use crate::mp::quadrature::GaussLegendre;
use crate::mp::result::MethodResult;

/// Largest `|z|` the ascending series is used for.
pub const BESSEL_ARGUMENT_CAP: f64 = 1e4;

/// Nodes per Gauss–Legendre panel in the quadrature routes.
pub const PANEL_ORDER: usize = 16;

/// Decimal digits lost to cancellation: log10 of the largest series term.
fn cancellation_digits(order: u32, z: f64) -> u32 {
    let half = (z.abs() / 2.0).max(f64::MIN_POSITIVE);
    let ln_half = half.ln();
    let mut ln_term = order as f64 * ln_half - (1..=order).map(|i| (i as f64).ln()).sum::<f64>();
    let mut max = ln_term;
    let mut m = 0u64;
    loop {
        let step = 2.0 * ln_half - ((m + 1) as f64).ln() - ((order as u64 + m + 1) as f64).ln();
        if step < 0.0 {
            break;
        }
        ln_term += step;
        max = max.max(ln_term);
        m += 1;
    }
    (max.max(0.0) / std::f64::consts::LN_10).ceil() as u32
}

/// `J_order(z)` from the ascending series.
///
/// Working precision is raised by the cancellation estimate so the result
/// carries the context's absolute accuracy even where the terms are huge.
pub fn bessel_j(order: u32, z: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let zf = z.to_f64();
    if !(zf.abs() <= BESSEL_ARGUMENT_CAP) {
        return Err(Error::BesselArgumentTooLarge(z.to_decimal_string()));
    }
    let extra = cancellation_digits(order, zf);
    let bits = bits_for_digits(ctx.working_digits() + extra + 5);
    let threshold = pow10(bits, -(ctx.working_digits() as i32));
    let half = Float::with_val(bits, z.value()) / 2u32;
    let half_sq = Float::with_val(bits, half.square_ref());

    let mut term = Float::with_val(bits, (&half).pow(order))
        / Float::with_val(bits, Float::factorial(order));
    let mut sum = term.clone();
    let mut m: u64 = 0;
    loop {
        let denom = (m + 1) * (order as u64 + m + 1);
        term *= &half_sq;
        term /= denom as f64;
        term = -term;
        sum += &term;
        m += 1;
        // past the peak and below the floor
        let ratio_below_one = half_sq.to_f64() < ((m + 1) * (order as u64 + m + 1)) as f64;
        if ratio_below_one && Float::with_val(bits, term.abs_ref()) < threshold {
            break;
        }
    }
    Ok(BigReal::new(sum, *ctx))
}

/// `J_order(z) = (1/π) ∫_0^π cos(order t - z sin t) dt` by composite
/// Gauss–Legendre with `panels` panels of [`PANEL_ORDER`] nodes.
pub fn bessel_j_integral(order: u32, z: &BigReal, panels: usize, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.working_bits();
    let rule = GaussLegendre::new(PANEL_ORDER, bits);
    let zero = Float::with_val(bits, 0);
    let pi = ctx.pi();
    let zv = Float::with_val(bits, z.value());
    let integral = rule.integrate(
        |t| {
            let arg = Float::with_val(bits, t * order) - Float::with_val(bits, t.sin_ref()) * &zv;
            arg.cos()
        },
        &zero,
        &pi,
        panels.max(1),
    );
    BigReal::new(integral / &pi, *ctx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BesselSeriesVariant {
    /// Second term `J_{4n+1}(4n+3)/(4n+3)`.
    AsPrinted,
    /// Second term `J_{4n+3}(4n+3)/(4n+3)`, orders matching arguments.
    Corrected,
}

impl BesselSeriesVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            BesselSeriesVariant::AsPrinted => "as_printed",
            BesselSeriesVariant::Corrected => "corrected",
        }
    }

    fn second_order(&self, n: u32) -> u32 {
        match self {
            BesselSeriesVariant::AsPrinted => 4 * n + 1,
            BesselSeriesVariant::Corrected => 4 * n + 3,
        }
    }

    fn method_id(&self) -> &'static str {
        match self {
            BesselSeriesVariant::AsPrinted => "bessel_as_printed",
            BesselSeriesVariant::Corrected => "bessel",
        }
    }
}

impl fmt::Display for BesselSeriesVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `J_n(n)/n` at integer argument.
fn bessel_ratio(order: u32, arg: u32, ctx: &PrecisionContext) -> Result<Float> {
    let z = BigReal::new(Float::with_val(ctx.working_bits(), arg), *ctx);
    let j = bessel_j(order, &z, ctx)?;
    Ok(j.into_value() / arg)
}

/// `2 sum_{n<N} [J_{4n+1}(4n+1)/(4n+1) - J_ord(4n+3)/(4n+3)]`.
pub fn dottie_bessel_partial(
    terms: u32,
    variant: BesselSeriesVariant,
    ctx: &PrecisionContext,
) -> Result<MethodResult> {
    let oracle = dottie_newton(ctx)?;
    bessel_partial_against(terms, variant, ctx, &oracle)
}

pub(crate) fn bessel_partial_against(
    terms: u32,
    variant: BesselSeriesVariant,
    ctx: &PrecisionContext,
    oracle: &BigReal,
) -> Result<MethodResult> {
    let bits = ctx.working_bits();
    let mut sum = Float::with_val(bits, 0);
    for n in 0..terms {
        let first = bessel_ratio(4 * n + 1, 4 * n + 1, ctx)?;
        let second = bessel_ratio(variant.second_order(n), 4 * n + 3, ctx)?;
        sum += first - second;
    }
    sum *= 2u32;
    Ok(
        MethodResult::new(variant.method_id(), BigReal::new(sum, *ctx), terms as u64)
            .with_error_against(oracle),
    )
}

/// Both variants at the same truncation, and which one (if exactly one)
/// lands within `tolerance` of the oracle.
#[derive(Debug, Clone)]
pub struct BesselResolution {
    pub as_printed: MethodResult,
    pub corrected: MethodResult,
    pub winner: Option<BesselSeriesVariant>,
}

pub fn resolve_bessel_variant(
    terms: u32,
    tolerance: f64,
    ctx: &PrecisionContext,
) -> Result<BesselResolution> {
    let oracle = dottie_newton(ctx)?;
    let as_printed = bessel_partial_against(terms, BesselSeriesVariant::AsPrinted, ctx, &oracle)?;
    let corrected = bessel_partial_against(terms, BesselSeriesVariant::Corrected, ctx, &oracle)?;
    let close = |r: &MethodResult| r.abs_error.as_ref().is_some_and(|e| e.to_f64() < tolerance);
    let winner = match (close(&as_printed), close(&corrected)) {
        (true, false) => Some(BesselSeriesVariant::AsPrinted),
        (false, true) => Some(BesselSeriesVariant::Corrected),
        _ => None,
    };
    Ok(BesselResolution {
        as_printed,
        corrected,
        winner,
    })
}

/// Truncated Kapteyn integral
///
/// ```text
/// (2/π) ∫_0^π sum_{n<N} [ sin((4n+1)u) sin((4n+1) sin u)/(4n+1)
///                        - sin((4n+3)u) sin((4n+3) sin u)/(4n+3) ] du
/// ```
///
/// Term by term, `(2/π) ∫_0^π sin(ku) sin(k sin u) du = 2 J_k(k)` for odd
/// `k`, so this reproduces the `N`-term Bessel sum up to quadrature error.
/// `quadrature_points` is split into panels of [`PANEL_ORDER`] nodes.
pub fn kapteyn_integral_partial(
    terms: u32,
    quadrature_points: usize,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if quadrature_points < 64 {
        return Err(Error::InvalidArgument(
            "Kapteyn quadrature needs at least 64 points".into(),
        ));
    }
    let bits = ctx.working_bits();
    if terms == 0 {
        return Ok(BigReal::new(Float::with_val(bits, 0), *ctx));
    }
    let rule = GaussLegendre::new(PANEL_ORDER, bits);
    let panels = quadrature_points.div_ceil(PANEL_ORDER);
    let zero = Float::with_val(bits, 0);
    let pi = Float::with_val(bits, Constant::Pi);
    let integral = rule.integrate(
        |u| {
            let sin_u = Float::with_val(bits, u.sin_ref());
            let mut acc = Float::with_val(bits, 0);
            for n in 0..terms {
                for (k, sign) in [(4 * n + 1, 1i32), (4 * n + 3, -1)] {
                    let a = Float::with_val(bits, u * k).sin();
                    let b = Float::with_val(bits, &sin_u * k).sin();
                    let t = a * b / k;
                    if sign > 0 {
                        acc += t;
                    } else {
                        acc -= t;
                    }
                }
            }
            acc
        },
        &zero,
        &pi,
        panels,
    );
    Ok(BigReal::new(integral * 2u32 / &pi, *ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: f64, ctx: &PrecisionContext) -> BigReal {
        BigReal::from_f64(v, *ctx)
    }

    #[test]
    fn spot_values() {
        let ctx = PrecisionContext::new(30).unwrap();
        assert_eq!(bessel_j(0, &real(0.0, &ctx), &ctx).unwrap().to_f64(), 1.0);
        let j11 = bessel_j(1, &real(1.0, &ctx), &ctx).unwrap();
        assert!((j11.to_f64() - 0.440_050_585_744_933_5).abs() < 1e-15);
        let j55 = bessel_j(5, &real(5.0, &ctx), &ctx).unwrap();
        assert!((j55.to_f64() - 0.261_140_546_120_170_1).abs() < 1e-15);
        let big = BigReal::from_f64(2e4, ctx);
        assert!(matches!(
            bessel_j(1, &big, &ctx),
            Err(Error::BesselArgumentTooLarge(_))
        ));
    }

    #[test]
    fn series_and_integral_agree() {
        let ctx = PrecisionContext::new(32).unwrap();
        for n in [0u32, 1, 3, 6, 10] {
            for z in [0.5f64, 1.0, 4.0, 7.5, 10.0] {
                let zr = real(z, &ctx);
                let s = bessel_j(n, &zr, &ctx).unwrap();
                let q = bessel_j_integral(n, &zr, 16, &ctx);
                let gap = s.abs_diff(&q);
                assert!(gap.to_f64() < 1e-30, "J_{n}({z}): gap {gap}");
            }
        }
    }

    #[test]
    fn large_order_keeps_absolute_accuracy() {
        // J_n(n) ~ 0.4473 n^{-1/3}; n = 403 needs ~90 extra digits
        let ctx = PrecisionContext::new(20).unwrap();
        let v = bessel_j(403, &real(403.0, &ctx), &ctx).unwrap().to_f64();
        let approx = 0.447_307_2 * 403f64.powf(-1.0 / 3.0);
        assert!((v / approx - 1.0).abs() < 0.01, "{v} vs {approx}");
    }

    #[test]
    fn first_bessel_partial() {
        let ctx = PrecisionContext::new(20).unwrap();
        let r = dottie_bessel_partial(1, BesselSeriesVariant::Corrected, &ctx).unwrap();
        let j11 = bessel_j(1, &real(1.0, &ctx), &ctx).unwrap().to_f64();
        let j33 = bessel_j(3, &real(3.0, &ctx), &ctx).unwrap().to_f64();
        assert!((r.value.to_f64() - 2.0 * (j11 - j33 / 3.0)).abs() < 1e-15);
        let r2 = dottie_bessel_partial(2, BesselSeriesVariant::Corrected, &ctx).unwrap();
        assert!(r2.abs_error.unwrap() < r.abs_error.unwrap());
        let empty = dottie_bessel_partial(0, BesselSeriesVariant::Corrected, &ctx).unwrap();
        assert_eq!(empty.value.to_f64(), 0.0);
    }

    #[test]
    fn kapteyn_first_term_matches_bessel() {
        let ctx = PrecisionContext::new(25).unwrap();
        let k = kapteyn_integral_partial(1, 256, &ctx).unwrap();
        let b = dottie_bessel_partial(1, BesselSeriesVariant::Corrected, &ctx).unwrap();
        assert!(k.abs_diff(&b.value).to_f64() < 1e-20);
        assert_eq!(kapteyn_integral_partial(0, 64, &ctx).unwrap().to_f64(), 0.0);
        assert!(kapteyn_integral_partial(1, 32, &ctx).is_err());
    }
}
