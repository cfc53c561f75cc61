use std::cmp::Ordering;
use std::fmt;

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

pub const DEFAULT_GUARD_DIGITS: u32 = 15;
pub const MIN_DECIMAL_DIGITS: u32 = 10;
pub const MIN_GUARD_DIGITS: u32 = 5;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Requested output digits `P` plus guard digits; every intermediate runs at
/// `P + guard` decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    decimal_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    pub fn new(decimal_digits: u32) -> Result<Self> {
        Self::with_guard(decimal_digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(decimal_digits: u32, guard_digits: u32) -> Result<Self> {
        if decimal_digits < MIN_DECIMAL_DIGITS {
            return Err(Error::Precision(format!(
                "requested precision {decimal_digits} is below {MIN_DECIMAL_DIGITS} digits"
            )));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::Precision(format!(
                "guard digits {guard_digits} below {MIN_GUARD_DIGITS}"
            )));
        }
        Ok(PrecisionContext {
            decimal_digits,
            guard_digits,
        })
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.decimal_digits + self.guard_digits
    }

    /// Binary precision carrying `working_digits` decimal digits.
    pub fn working_bits(&self) -> u32 {
        bits_for_digits(self.working_digits())
    }

    pub fn with_doubled_guard(&self) -> Self {
        PrecisionContext {
            decimal_digits: self.decimal_digits,
            guard_digits: self.guard_digits * 2,
        }
    }

    /// Same guard, different output precision.
    pub fn with_digits(&self, decimal_digits: u32) -> Result<Self> {
        Self::with_guard(decimal_digits, self.guard_digits)
    }

    /// Comparison tolerance `10^(1-P)`.
    pub fn tolerance(&self) -> Float {
        pow10(self.working_bits(), 1 - self.decimal_digits as i32)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.working_bits(), Constant::Pi)
    }

    pub fn float(&self, v: impl Into<f64>) -> Float {
        Float::with_val(self.working_bits(), v.into())
    }
}

pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 8
}

/// `10^exp` at `bits` of precision.
pub fn pow10(bits: u32, exp: i32) -> Float {
    Float::with_val(bits, 10).pow(exp)
}

/// A real carried at the working precision of its context.
#[derive(Debug, Clone, PartialEq)]
pub struct BigReal {
    value: Float,
    ctx: PrecisionContext,
}

impl BigReal {
    /// Rounds `value` to the context's working precision.
    pub fn new(value: Float, ctx: PrecisionContext) -> Self {
        let value = Float::with_val(ctx.working_bits(), value);
        BigReal { value, ctx }
    }

    pub fn from_f64(v: f64, ctx: PrecisionContext) -> Self {
        BigReal {
            value: Float::with_val(ctx.working_bits(), v),
            ctx,
        }
    }

    /// Parses fixed or scientific decimal notation.
    pub fn parse(text: &str, ctx: PrecisionContext) -> Result<Self> {
        let parsed = Float::parse(text.trim())
            .map_err(|e| Error::Malformed(format!("decimal `{text}`: {e}")))?;
        Ok(BigReal {
            value: Float::with_val(ctx.working_bits(), parsed),
            ctx,
        })
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_value(self) -> Float {
        self.value
    }

    pub fn ctx(&self) -> PrecisionContext {
        self.ctx
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn abs_diff(&self, other: &BigReal) -> BigReal {
        let bits = self.ctx.working_bits().max(other.ctx.working_bits());
        let d = Float::with_val(bits, &self.value - &other.value).abs();
        BigReal {
            value: d,
            ctx: self.ctx,
        }
    }

    /// `|self - other| <= 10^(1-P)`, `P` taken from `self`.
    pub fn agrees_with(&self, other: &BigReal) -> bool {
        self.abs_diff(other).value <= self.ctx.tolerance()
    }

    /// `P` significant digits, rounded to nearest.
    pub fn to_decimal_string(&self) -> String {
        format_significant(&self.value, self.ctx.decimal_digits as usize)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

/// Renders `value` with `digits` significant digits: fixed-point for
/// moderate exponents, otherwise `d.ddd…e±N`.
pub fn format_significant(value: &Float, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let (neg, mantissa, exp) = value.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    // value = 0.mantissa * 10^exp
    let exp = exp.expect("finite non-zero value has an exponent");
    let sign = if neg { "-" } else { "" };
    let body = if (-20..=0).contains(&exp) {
        format!("0.{}{}", "0".repeat((-exp) as usize), mantissa)
    } else if exp > 0 && (exp as usize) < mantissa.len() {
        let (int, frac) = mantissa.split_at(exp as usize);
        format!("{int}.{frac}")
    } else {
        let (first, rest) = mantissa.split_at(1);
        let e = exp - 1;
        if rest.is_empty() {
            format!("{first}e{e}")
        } else {
            format!("{first}.{rest}e{e}")
        }
    };
    format!("{sign}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_invariants() {
        assert!(PrecisionContext::new(9).is_err());
        assert!(PrecisionContext::with_guard(20, 4).is_err());
        let ctx = PrecisionContext::new(32).unwrap();
        assert_eq!(ctx.guard_digits(), DEFAULT_GUARD_DIGITS);
        assert_eq!(ctx.working_digits(), 47);
        assert!(ctx.working_bits() as f64 >= 47.0 * LOG2_10);
        assert_eq!(ctx.with_doubled_guard().guard_digits(), 30);
    }

    #[test]
    fn formatting() {
        let ctx = PrecisionContext::new(12).unwrap();
        let pi = BigReal::new(ctx.pi(), ctx);
        assert_eq!(pi.to_decimal_string(), "3.14159265359");
        let quarter = BigReal::parse("0.25", ctx).unwrap();
        assert_eq!(quarter.to_decimal_string(), "0.250000000000");
        let tiny = BigReal::parse("-1.5e-40", ctx).unwrap();
        assert_eq!(tiny.to_decimal_string(), "-1.50000000000e-40");
        let small = BigReal::parse("0.00123", ctx).unwrap();
        assert_eq!(small.to_decimal_string(), "0.00123000000000");
        let large = BigReal::parse("1e15", ctx).unwrap();
        assert_eq!(large.to_decimal_string(), "1.00000000000e15");
        assert_eq!(BigReal::from_f64(0.0, ctx).to_decimal_string(), "0");
    }

    #[test]
    fn decimal_round_trip() {
        let ctx = PrecisionContext::new(40).unwrap();
        for text in ["0.7390851332151606416553120876738734040134", "-2.5e-30", "123.456"] {
            let a = BigReal::parse(text, ctx).unwrap();
            let s = a.to_decimal_string();
            let b = BigReal::parse(&s, ctx).unwrap();
            assert_eq!(b.to_decimal_string(), s);
        }
    }

    #[test]
    fn tolerance_comparison() {
        let ctx = PrecisionContext::new(20).unwrap();
        let a = BigReal::parse("0.5", ctx).unwrap();
        let b = BigReal::parse("0.50000000000000000001", ctx).unwrap();
        let c = BigReal::parse("0.5000000000000000001", ctx).unwrap();
        let d = BigReal::parse("0.500000000000000001", ctx).unwrap();
        assert!(a.agrees_with(&b));
        assert!(a.agrees_with(&c));
        assert!(!a.agrees_with(&d));
    }
}
