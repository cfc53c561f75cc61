//! Log-gamma by Stirling's series with argument shifting, its derivatives,
//! and the inverse on either monotone branch.

use std::cell::RefCell;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mp::context::{pow10, BigReal, PrecisionContext};
use crate::mp::roots::bracketed_newton;

/// Incremental Akiyama–Tanigawa state.
#[derive(Default)]
struct BernoulliTable {
    row: Vec<Rational>,
    values: Vec<Rational>,
}

impl BernoulliTable {
    fn extend_to(&mut self, n: usize) {
        while self.values.len() <= n {
            let m = self.values.len();
            self.row.push(Rational::from((1, m as u32 + 1)));
            for j in (1..=m).rev() {
                let diff = Rational::from(&self.row[j - 1] - &self.row[j]);
                self.row[j - 1] = diff * Integer::from(j);
            }
            // the recurrence yields B_1 = +1/2
            let value = if m == 1 { Rational::from((-1, 2)) } else { self.row[0].clone() };
            self.values.push(value);
        }
    }
}

thread_local! {
    static BERNOULLI: RefCell<BernoulliTable> = RefCell::new(BernoulliTable::default());
}

/// `B_0 .. B_n`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    BERNOULLI.with(|t| {
        let mut t = t.borrow_mut();
        t.extend_to(n);
        t.values[..=n].to_vec()
    })
}

fn bernoulli(n: usize) -> Rational {
    BERNOULLI.with(|t| {
        let mut t = t.borrow_mut();
        t.extend_to(n);
        t.values[n].clone()
    })
}

/// Shift so that Stirling's series is used at `z >= digits`, where its
/// smallest term is far below `10^-digits`.
fn shift_for(x: &Float, digits: u32) -> u32 {
    let target = digits as f64 + 10.0;
    let xf = x.to_f64();
    if xf >= target {
        0
    } else {
        (target - xf).ceil() as u32
    }
}

struct Shifted {
    z: Float,
    /// `x (x+1) ... (x+s-1)` pieces, kept separate for each use.
    offsets: Vec<Float>,
}

fn shifted(x: &Float, digits: u32) -> Shifted {
    let bits = x.prec();
    let s = shift_for(x, digits);
    let offsets: Vec<Float> = (0..s).map(|k| Float::with_val(bits, x + k)).collect();
    Shifted {
        z: Float::with_val(bits, x + s),
        offsets,
    }
}

/// `sum_k B_2k / (den(k) z^(pow(k)))` until the terms drop below `eps`.
fn stirling_tail<F>(z: &Float, eps: &Float, coeff: F) -> Float
where
    F: Fn(usize, &Rational) -> (Rational, u32),
{
    let bits = z.prec();
    // the series is asymptotic; its terms shrink until 2k ~ 2πz
    let limit = (2.0 * std::f64::consts::PI * z.to_f64()) as usize / 2;
    let mut sum = Float::with_val(bits, 0);
    let mut k = 1;
    while k <= limit.max(1) {
        let (c, power) = coeff(k, &bernoulli(2 * k));
        let mut term = Float::with_val(bits, &c);
        for _ in 0..power {
            term /= z;
        }
        let small = Float::with_val(bits, term.abs_ref()) < *eps;
        sum += term;
        if small {
            break;
        }
        k += 1;
    }
    sum
}

fn require_positive(x: &Float) -> Result<()> {
    if !(x.is_finite() && *x > 0) {
        return Err(Error::InvalidArgument(format!(
            "gamma routines take x > 0, got {x}"
        )));
    }
    Ok(())
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(BigReal::new(ln_gamma_float(x.value(), ctx)?, *ctx))
}

pub(crate) fn ln_gamma_float(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    require_positive(x)?;
    let bits = ctx.working_bits();
    let x = Float::with_val(bits, x);
    let eps = pow10(bits, -(ctx.working_digits() as i32) - 2);
    let Shifted { z, offsets } = shifted(&x, ctx.working_digits());
    // (z - 1/2) ln z - z + ln(2π)/2 + sum B_2k / (2k(2k-1) z^(2k-1))
    let ln_z = Float::with_val(bits, z.ln_ref());
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let mut value = Float::with_val(bits, &z - 0.5f64) * &ln_z - &z + two_pi.ln() / 2u32;
    value += stirling_tail(&z, &eps, |k, b| {
        let den = (2 * k * (2 * k - 1)) as u32;
        (Rational::from(b / den), (2 * k - 1) as u32)
    });
    let mut product = Float::with_val(bits, 1);
    for o in &offsets {
        product *= o;
    }
    Ok(value - product.ln())
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let lg = ln_gamma_float(x.value(), ctx)?;
    Ok(BigReal::new(lg.exp(), *ctx))
}

/// `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(BigReal::new(digamma_float(x.value(), ctx)?, *ctx))
}

fn digamma_float(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    require_positive(x)?;
    let bits = ctx.working_bits();
    let x = Float::with_val(bits, x);
    let eps = pow10(bits, -(ctx.working_digits() as i32) - 2);
    let Shifted { z, offsets } = shifted(&x, ctx.working_digits());
    // ln z - 1/(2z) - sum B_2k / (2k z^(2k))
    let mut value = Float::with_val(bits, z.ln_ref()) - Float::with_val(bits, z.recip_ref()) / 2u32;
    value -= stirling_tail(&z, &eps, |k, b| {
        (Rational::from(b / (2 * k) as u32), (2 * k) as u32)
    });
    for o in &offsets {
        value -= Float::with_val(bits, o.recip_ref());
    }
    Ok(value)
}

/// `ψ'(x)` for `x > 0`.
pub fn trigamma(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(BigReal::new(trigamma_float(x.value(), ctx)?, *ctx))
}

fn trigamma_float(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    require_positive(x)?;
    let bits = ctx.working_bits();
    let x = Float::with_val(bits, x);
    let eps = pow10(bits, -(ctx.working_digits() as i32) - 2);
    let Shifted { z, offsets } = shifted(&x, ctx.working_digits());
    // 1/z + 1/(2z^2) + sum B_2k / z^(2k+1)
    let inv = Float::with_val(bits, z.recip_ref());
    let mut value = Float::with_val(bits, &inv + Float::with_val(bits, inv.square_ref()) / 2u32);
    value += stirling_tail(&z, &eps, |k, b| (b.clone(), (2 * k + 1) as u32));
    for o in &offsets {
        value += Float::with_val(bits, o.square_ref()).recip();
    }
    Ok(value)
}

/// Minimiser of `Γ` on the positive axis, the root of `ψ` in `(1, 2)`.
pub fn gamma_minimum_point(ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(BigReal::new(gamma_min_float(ctx)?, *ctx))
}

fn gamma_min_float(ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.working_bits();
    let stop = pow10(bits, -(ctx.working_digits() as i32));
    let mut failure = None;
    let root = bracketed_newton(
        |x| match (digamma_float(x, ctx), trigamma_float(x, ctx)) {
            (Ok(f), Ok(df)) => (f, df),
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                (Float::with_val(bits, 0), Float::with_val(bits, 1))
            }
        },
        Float::with_val(bits, 1),
        Float::with_val(bits, 2),
        Some(Float::with_val(bits, 1.4616)),
        &stop,
        4 * bits,
        "gamma minimum",
    );
    match failure {
        Some(e) => Err(e),
        None => root,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaBranch {
    /// `x >= x_min`
    Increasing,
    /// `0 < x <= x_min`
    Decreasing,
}

/// `x` on the increasing branch with `Γ(x) = y`.
pub fn inverse_gamma(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    inverse_gamma_on(y, GammaBranch::Increasing, ctx)
}

/// `x` on the chosen branch with `Γ(x) = y`, by Newton on
/// `ln Γ(x) - ln y` with derivative `ψ(x)`.
pub fn inverse_gamma_on(y: &BigReal, branch: GammaBranch, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let yf = Float::with_val(bits, y.value());
    let x_min = gamma_min_float(ctx)?;
    let g_min = ln_gamma_float(&x_min, ctx)?.exp();
    if !yf.is_finite() || yf < g_min {
        return Err(Error::BelowGammaMinimum(y.to_decimal_string()));
    }
    let close = Float::with_val(bits, &yf - &g_min) <= pow10(bits, -(ctx.working_digits() as i32));
    if close {
        return Ok(BigReal::new(x_min, *ctx));
    }
    let (lo, hi) = match branch {
        GammaBranch::Increasing => (x_min, Float::with_val(bits, &yf + 2u32)),
        // Γ(x) >= Γ(x_min)/x > 0.885/x, so Γ(0.88/(y+1)) > y
        GammaBranch::Decreasing => (
            Float::with_val(bits, 0.88) / Float::with_val(bits, &yf + 1u32),
            x_min,
        ),
    };
    let ln_y = Float::with_val(bits, yf.ln_ref());
    let stop = pow10(bits, -(ctx.decimal_digits() as i32) - 5);
    let mut failure = None;
    let root = bracketed_newton(
        |x| match (ln_gamma_float(x, ctx), digamma_float(x, ctx)) {
            (Ok(f), Ok(df)) => (f - &ln_y, df),
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                (Float::with_val(bits, 0), Float::with_val(bits, 1))
            }
        },
        lo,
        hi,
        None,
        &stop,
        4 * bits,
        "inverse gamma",
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(BigReal::new(root?, *ctx))
}
