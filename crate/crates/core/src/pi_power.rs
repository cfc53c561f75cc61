//! Powers of π from the bilateral sums `sum_n 1/(x-n)^(k+2)`.
//!
//! ```text
//! π^(2+k) = (-1)^k (k+1) / (2^k A_k(x)) * sum_{n in Z} 1/(x-n)^(k+2)
//!
//! A_k(x) = sum over partitions of k (m_1 + 2 m_2 + ... = k, S = sum m_j) of
//!          S! / (2^S prod m_j! [sin^2(πx)]^(S+1)) * prod [cos(2πx + jπ/2)]^m_j / (j!)^m_j
//! ```
//!
//! Arguments are rationals so that the trigonometric factors can be reduced
//! exactly and their zeros detected without rounding.

use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::exact::enumerate_partitions;
use crate::mp::context::{BigReal, PrecisionContext};

/// `(sin(πr), cos(πr))`; exact zeros and units where `r` is a multiple of `1/2`.
fn sin_cos_pi(r: &Rational, bits: u32) -> (Float, Float) {
    // reduce into [0, 2)
    let turns = (r / Rational::from(2)).floor();
    let reduced = r - turns * Rational::from(2);
    let zero = || Float::with_val(bits, 0);
    let unit = |s: i32| Float::with_val(bits, s);
    if *reduced.denom() == 1 {
        return if reduced == 0 {
            (zero(), unit(1))
        } else {
            (zero(), unit(-1))
        };
    }
    if *reduced.denom() == 2 {
        return if reduced < 1 {
            (unit(1), zero())
        } else {
            (unit(-1), zero())
        };
    }
    let angle = Float::with_val(bits, &reduced) * Float::with_val(bits, rug::float::Constant::Pi);
    angle.sin_cos(Float::new(bits))
}

fn check_not_integer(x: &Rational) -> Result<()> {
    if *x.denom() == 1 {
        return Err(Error::CosecantPole(x.to_string()));
    }
    Ok(())
}

/// Value of `A_k(x)` together with the largest summand magnitude, used to
/// decide whether the value vanishes.
fn script_a_with_scale(k: u32, x: &Rational, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    check_not_integer(x)?;
    let bits = ctx.working_bits();
    let (sin, _) = sin_cos_pi(x, bits);
    let sin_sq = Float::with_val(bits, sin.square_ref());
    let two_x = x * Rational::from(2);
    // cos(2πx + jπ/2) = cos(π(2x + j/2)), j = 1..k
    let cosines: Vec<Float> = (1..=k)
        .map(|j| {
            let arg = &two_x + Rational::from((j, 2));
            sin_cos_pi(&arg, bits).1
        })
        .collect();

    let mut total = Float::with_val(bits, 0);
    let mut scale = Float::with_val(bits, 0);
    for partition in enumerate_partitions(k) {
        let s = partition.part_count();
        let mut coeff = Rational::from(Integer::from(Integer::factorial(s)));
        coeff >>= s;
        let mut product = Float::with_val(bits, 1);
        for (j, m) in partition.parts() {
            coeff /= Integer::from(Integer::factorial(m));
            let jf = Integer::from(Integer::factorial(j));
            for _ in 0..m {
                coeff /= &jf;
            }
            let c = &cosines[(j - 1) as usize];
            product *= powu(c, m);
        }
        let mut term = Float::with_val(bits, &coeff) * product;
        for _ in 0..=s {
            term /= &sin_sq;
        }
        let magnitude = Float::with_val(bits, term.abs_ref());
        if magnitude > scale {
            scale = magnitude;
        }
        total += term;
    }
    Ok((total, scale))
}

fn powu(x: &Float, m: u32) -> Float {
    Float::with_val(x.prec(), x.pow(m))
}

/// `A_k(x)`, summed over partitions in lexicographic order.
pub fn script_a(k: u32, x: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    let (value, _) = script_a_with_scale(k, x, ctx)?;
    Ok(BigReal::new(value, *ctx))
}

/// `2/((k+1)(N-|x|-1)^(k+1))`: both tails of the bilateral sum, by integral
/// comparison.
pub fn bilateral_tail_bound(k: u32, x: &Rational, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let gap = Rational::from(n) - x.clone().abs() - 1u32;
    if gap < 1 {
        return Err(Error::TruncationTooSmall {
            n,
            x: x.to_string(),
        });
    }
    let bits = ctx.working_bits();
    let mut denom = Float::with_val(bits, &gap);
    denom = powu(&denom, k + 1) * (k + 1);
    Ok(BigReal::new(Float::with_val(bits, 2) / denom, *ctx))
}

/// `sum_{n=-N}^{N} 1/(x-n)^(k+2)` and its tail bound.
///
/// Terms are grouped by `|x-n|` and added from the smallest magnitude up;
/// mirrored pairs of equal distance are combined first, so symmetric
/// cancellations come out exactly.
pub fn bilateral_sum(
    k: u32,
    x: &Rational,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<(BigReal, BigReal)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    check_not_integer(x)?;
    let tail = bilateral_tail_bound(k, x, n, ctx)?;
    let bits = ctx.working_bits();
    let n = i64::try_from(n).map_err(|_| Error::InvalidArgument("N too large".into()))?;

    // (|x-n|, x-n), farthest first
    let mut distances: Vec<(Rational, Rational)> = (-n..=n)
        .map(|i| {
            let d = x - Rational::from(i);
            (d.clone().abs(), d)
        })
        .collect();
    distances.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    let power = k + 2;
    let term = |d: &Rational| -> Float {
        let mut p = Rational::from(1);
        for _ in 0..power {
            p *= d;
        }
        Float::with_val(bits, p.recip())
    };
    let mut sum = Float::with_val(bits, 0);
    for group in distances.chunk_by(|a, b| a.0 == b.0) {
        let mut partial = Float::with_val(bits, 0);
        for (_, d) in group {
            partial += term(d);
        }
        sum += partial;
    }
    Ok((BigReal::new(sum, *ctx), tail))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiPowerEstimate {
    pub k: u32,
    pub x: Rational,
    pub terms: u64,
    pub estimate: BigReal,
    /// Bilateral tail bound scaled by `|prefactor / A_k(x)|`.
    pub tail_bound: BigReal,
}

impl PiPowerEstimate {
    /// `π^(k+2)` at the estimate's precision.
    pub fn reference(&self) -> BigReal {
        let ctx = self.estimate.ctx();
        let pi = ctx.pi();
        BigReal::new(powu(&pi, self.k + 2), ctx)
    }

    pub fn gap(&self) -> BigReal {
        self.estimate.abs_diff(&self.reference())
    }

    pub fn within_bound(&self) -> bool {
        self.gap() <= self.tail_bound
    }
}

/// `(-1)^k (k+1) / (2^k A_k(x))` times the truncated bilateral sum.
pub fn pi_power_estimate(
    k: u32,
    x: &Rational,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<PiPowerEstimate> {
    let (a, scale) = script_a_with_scale(k, x, ctx)?;
    let bits = ctx.working_bits();
    let floor = Float::with_val(bits, &scale * ctx.tolerance());
    if Float::with_val(bits, a.abs_ref()) <= floor {
        return Err(Error::DegenerateSamplePoint { k, x: x.to_string() });
    }
    let (sum, tail) = bilateral_sum(k, x, n, ctx)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let mut factor = Float::with_val(bits, sign * (k as i32 + 1));
    factor >>= k;
    factor /= &a;
    let estimate = Float::with_val(bits, sum.value() * &factor);
    let tail_bound = Float::with_val(bits, tail.value() * factor.abs());
    Ok(PiPowerEstimate {
        k,
        x: x.clone(),
        terms: n,
        estimate: BigReal::new(estimate, *ctx),
        tail_bound: BigReal::new(tail_bound, *ctx),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerIdentity {
    /// `π^3 cot(πx) cosec^2(πx) = sum 1/(x-n)^3`
    Cubic,
    /// `π^5 cot(πx) cosec^2(πx) [cosec^2(πx) - 1/3] = sum 1/(x-n)^5`
    Quintic,
}

impl EulerIdentity {
    fn k(&self) -> u32 {
        match self {
            EulerIdentity::Cubic => 1,
            EulerIdentity::Quintic => 3,
        }
    }
}

impl fmt::Display for EulerIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EulerIdentity::Cubic => "cubic",
            EulerIdentity::Quintic => "quintic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerCheck {
    /// Closed form.
    pub lhs: BigReal,
    /// Truncated bilateral sum.
    pub rhs: BigReal,
    pub gap: BigReal,
    pub tail_bound: BigReal,
}

impl EulerCheck {
    pub fn holds(&self) -> bool {
        self.gap <= self.tail_bound
    }
}

/// Compares the cotangent closed form with the truncated sum.
pub fn euler_identity_check(
    kind: EulerIdentity,
    x: &Rational,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<EulerCheck> {
    check_not_integer(x)?;
    let bits = ctx.working_bits();
    let (sin, cos) = sin_cos_pi(x, bits);
    let cosec_sq = Float::with_val(bits, sin.square_ref()).recip();
    let cot = Float::with_val(bits, &cos / &sin);
    let pi = ctx.pi();
    let mut lhs = Float::with_val(bits, &cot * &cosec_sq);
    match kind {
        EulerIdentity::Cubic => lhs *= powu(&pi, 3),
        EulerIdentity::Quintic => {
            let third = Float::with_val(bits, 1) / 3u32;
            lhs *= Float::with_val(bits, &cosec_sq - &third);
            lhs *= powu(&pi, 5);
        }
    }
    let (rhs, tail_bound) = bilateral_sum(kind.k(), x, n, ctx)?;
    let lhs = BigReal::new(lhs, *ctx);
    let gap = lhs.abs_diff(&rhs);
    Ok(EulerCheck {
        lhs,
        rhs,
        gap,
        tail_bound,
    })
}
