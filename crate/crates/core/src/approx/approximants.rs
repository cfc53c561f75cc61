//! Closed-form approximants of the fixed point and their digit scores.

use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};

use super::digits::correct_decimal_digits;
use super::gamma::{inverse_gamma_on, GammaBranch};
use crate::error::{Error, Result};
use crate::mp::context::{BigReal, PrecisionContext};
use crate::mp::oracle::dottie_newton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApproximantName {
    /// `(4 + π) / (4 + 4√2)`
    Tangent,
    /// `(π/160)^(1/13)`
    Broukhis,
    /// `Γ^{-1}(e^{π/3} - ln 5)` on the decreasing branch of `Γ`
    Hammond,
}

impl ApproximantName {
    pub const ALL: [ApproximantName; 3] = [
        ApproximantName::Tangent,
        ApproximantName::Broukhis,
        ApproximantName::Hammond,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ApproximantName::Tangent => "tangent",
            ApproximantName::Broukhis => "broukhis",
            ApproximantName::Hammond => "hammond",
        }
    }
}

impl fmt::Display for ApproximantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ApproximantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ApproximantName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownApproximant(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Approximant {
    pub name: ApproximantName,
    pub value: BigReal,
    pub correct_decimal_digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximantRecord {
    pub name: ApproximantName,
    pub value: String,
    pub correct_decimal_digits: u32,
}

impl Approximant {
    pub fn record(&self) -> ApproximantRecord {
        ApproximantRecord {
            name: self.name,
            value: self.value.to_decimal_string(),
            correct_decimal_digits: self.correct_decimal_digits,
        }
    }
}

/// Raw value of an approximant.
pub fn approximant_value(name: ApproximantName, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let pi = ctx.pi();
    let value = match name {
        ApproximantName::Tangent => {
            let sqrt2 = Float::with_val(bits, 2).sqrt();
            Float::with_val(bits, &pi + 4u32) / (sqrt2 * 4u32 + 4u32)
        }
        ApproximantName::Broukhis => {
            let base = pi / 160u32;
            let exponent = Float::with_val(bits, 1) / 13u32;
            Float::with_val(bits, rug::ops::Pow::pow(&base, &exponent))
        }
        ApproximantName::Hammond => {
            let y = Float::with_val(bits, &pi / 3u32).exp() - Float::with_val(bits, 5).ln();
            let y = BigReal::new(y, *ctx);
            return inverse_gamma_on(&y, GammaBranch::Decreasing, ctx);
        }
    };
    Ok(BigReal::new(value, *ctx))
}

/// Value and digit score against the oracle.
pub fn approximant(name: ApproximantName, ctx: &PrecisionContext) -> Result<Approximant> {
    let oracle = dottie_newton(ctx)?;
    let value = approximant_value(name, ctx)?;
    let correct_decimal_digits = correct_decimal_digits(&value, &oracle)?;
    Ok(Approximant {
        name,
        value,
        correct_decimal_digits,
    })
}

/// All approximants in declaration order.
pub fn all_approximants(ctx: &PrecisionContext) -> Result<Vec<Approximant>> {
    ApproximantName::ALL.into_iter().map(|n| approximant(n, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_claims() {
        let ctx = PrecisionContext::new(30).unwrap();
        let scores: Vec<(f64, u32)> = all_approximants(&ctx)
            .unwrap()
            .iter()
            .map(|a| (a.value.to_f64(), a.correct_decimal_digits))
            .collect();
        assert!((scores[0].0 - 0.739_536_133_515_2).abs() < 1e-12);
        assert!((scores[1].0 - 0.739_085_372_224_499_6).abs() < 1e-15);
        assert!((scores[2].0 - 0.739_085_130_744_7).abs() < 1e-12);
        assert_eq!(scores.iter().map(|s| s.1).collect::<Vec<_>>(), vec![3, 6, 8]);
    }

    #[test]
    fn names() {
        assert_eq!("hammond".parse::<ApproximantName>().unwrap(), ApproximantName::Hammond);
        assert!(matches!(
            "pade".parse::<ApproximantName>(),
            Err(Error::UnknownApproximant(_))
        ));
        let ctx = PrecisionContext::new(25).unwrap();
        let rec = approximant(ApproximantName::Tangent, &ctx).unwrap().record();
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"name\":\"tangent\""));
        let back: ApproximantRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
    }
}
