//! Numeric evaluation of the exact odd-power coefficients and convergence
//! tables for the slowly converging routes.

use std::str::FromStr;

use rug::{Complete, Float};
use serde::{Deserialize, Serialize};

use super::context::{BigReal, PrecisionContext};
use super::oracle::{cosine_iteration_against, dottie_newton};
use super::result::MethodResult;
use crate::connections::bessel::{bessel_partial_against, BesselSeriesVariant};
use crate::error::{Error, Result};
use crate::exact::{kaplan_coefficients_reversion, CoefficientTable};

/// Runs `f` at `ctx` and again with doubled guard digits; repeats the
/// doubling (at most three times) until two consecutive runs print the same
/// `P` digits.
pub fn with_stability_check<F>(ctx: &PrecisionContext, f: F) -> Result<BigReal>
where
    F: Fn(&PrecisionContext) -> Result<BigReal>,
{
    let mut current = f(ctx)?;
    let mut c = *ctx;
    for _ in 0..3 {
        let wider = c.with_doubled_guard();
        let next = f(&wider)?;
        let next_at_p = BigReal::new(next.value().clone(), *ctx);
        if next_at_p.to_decimal_string() == current.to_decimal_string() {
            return Ok(current);
        }
        current = next_at_p;
        c = wider;
    }
    Ok(current)
}

/// `π/2 + sum a_n π^n` over the first `n_terms` odd indices `1, 3, ...`.
pub fn eval_kaplan_partial(
    coeffs: &CoefficientTable,
    n_terms: u32,
    ctx: &PrecisionContext,
) -> Result<MethodResult> {
    let oracle = dottie_newton(ctx)?;
    eval_kaplan_partial_against(coeffs, n_terms, ctx, &oracle)
}

pub(crate) fn eval_kaplan_partial_against(
    coeffs: &CoefficientTable,
    n_terms: u32,
    ctx: &PrecisionContext,
    oracle: &BigReal,
) -> Result<MethodResult> {
    let indices: Vec<u32> = (0..n_terms).map(|i| 2 * i + 1).collect();
    let mut values = Vec::with_capacity(indices.len());
    for &n in &indices {
        let a = coeffs.get(n).ok_or(Error::TableTooShort {
            needed: n,
            available: coeffs.max_index(),
        })?;
        values.push((n, a.clone()));
    }
    let value = with_stability_check(ctx, |c| {
        let bits = c.working_bits();
        let pi = c.pi();
        let mut sum = Float::with_val(bits, &pi / 2u32);
        let mut power = pi.clone();
        let pi_sq = Float::with_val(bits, pi.square_ref());
        for (i, (_, a)) in values.iter().enumerate() {
            if i > 0 {
                power *= &pi_sq;
            }
            sum += Float::with_val(bits, a) * &power;
        }
        Ok(BigReal::new(sum, *c))
    })?;
    Ok(MethodResult::new("kaplan", value, n_terms as u64).with_error_against(oracle))
}

/// `|a_(n+2) π^(n+2)| / |a_n π^n|` for odd `n` in `[from, to]`.
pub fn kaplan_term_ratios(
    coeffs: &CoefficientTable,
    from: u32,
    to: u32,
    ctx: &PrecisionContext,
) -> Result<Vec<(u32, f64)>> {
    let pi_sq = Float::with_val(ctx.working_bits(), ctx.pi().square_ref());
    let mut out = Vec::new();
    for n in (from..=to).filter(|n| n % 2 == 1) {
        let missing = |k: u32| Error::TableTooShort {
            needed: k,
            available: coeffs.max_index(),
        };
        let lo = coeffs.get(n).ok_or_else(|| missing(n))?;
        let hi = coeffs.get(n + 2).ok_or_else(|| missing(n + 2))?;
        let q = Float::with_val(ctx.working_bits(), &(hi / lo).complete()) * &pi_sq;
        out.push((n, q.abs().to_f64()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceMethod {
    Kaplan,
    BesselSeries,
    CosineIteration,
}

impl ConvergenceMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConvergenceMethod::Kaplan => "kaplan",
            ConvergenceMethod::BesselSeries => "bessel_series",
            ConvergenceMethod::CosineIteration => "cosine_iteration",
        }
    }
}

impl FromStr for ConvergenceMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kaplan" => Ok(ConvergenceMethod::Kaplan),
            "bessel_series" | "bessel" => Ok(ConvergenceMethod::BesselSeries),
            "cosine_iteration" => Ok(ConvergenceMethod::CosineIteration),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub terms: u64,
    pub abs_error: BigReal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub terms: u64,
    pub abs_error: String,
}

impl ConvergenceRow {
    pub fn record(&self) -> ConvergenceRecord {
        ConvergenceRecord {
            terms: self.terms,
            abs_error: self.abs_error.to_decimal_string(),
        }
    }
}

/// Error against the oracle for each requested term count, in input order.
pub fn convergence_report(
    method: ConvergenceMethod,
    term_counts: &[u64],
    ctx: &PrecisionContext,
) -> Result<Vec<ConvergenceRow>> {
    if term_counts.is_empty() {
        return Ok(Vec::new());
    }
    let oracle = dottie_newton(ctx)?;
    let max = *term_counts.iter().max().expect("non-empty");
    let table = match method {
        ConvergenceMethod::Kaplan => {
            let n_max = u32::try_from(2 * max.max(1) - 1)
                .map_err(|_| Error::InvalidArgument("term count too large".into()))?;
            Some(kaplan_coefficients_reversion(n_max)?)
        }
        _ => None,
    };
    term_counts
        .iter()
        .map(|&terms| {
            let n = u32::try_from(terms)
                .map_err(|_| Error::InvalidArgument("term count too large".into()))?;
            let r = match method {
                ConvergenceMethod::Kaplan => eval_kaplan_partial_against(
                    table.as_ref().expect("built above"),
                    n,
                    ctx,
                    &oracle,
                )?,
                ConvergenceMethod::CosineIteration => {
                    if n == 0 {
                        return Err(Error::InvalidArgument(
                            "cosine iteration needs at least one step".into(),
                        ));
                    }
                    cosine_iteration_against(ctx, n, &oracle)
                }
                ConvergenceMethod::BesselSeries => {
                    bessel_partial_against(n, BesselSeriesVariant::Corrected, ctx, &oracle)?
                }
            };
            Ok(ConvergenceRow {
                terms,
                abs_error: r.abs_error.expect("filled against oracle"),
            })
        })
        .collect()
}
