//! Exact coefficients of the odd-power-of-π expansion
//!
//! ```text
//! D = π/2 + sum_{n odd} a_n π^n
//! ```
//!
//! Expanding `f(x) = x - cos x` around `x = π/2` gives the shifted map
//! `u + sin u` (with `u = x - π/2`). If `t(v) = sum c_n v^n` is its
//! compositional inverse then `D = g(0) = π/2 + t(-π/2)`, hence
//! `a_n = c_n (-1/2)^n`.
//!
//! Two independent routes produce the `a_n`:
//!
//! * [`Route::Reversion`] reverts `u + sin u` order by order.
//! * [`Route::Lagrange`] evaluates the Lagrange-inversion limit as a Taylor
//!   coefficient: with `t = x - π/2` the bracket `cos x / t - 1` becomes
//!   `-sin t / t - 1`, and the `(n-1)`-th derivative at `t = 0` of its
//!   `-n`-th power is `(n-1)!` times the `t^(n-1)` coefficient. The
//!   reciprocal goes through the Faà di Bruno partition sum.
//!
//! The same constant written as `sum_k b_k π^(2k+1)` uses
//! `b_0 = 1/2 + a_1` and `b_k = a_(2k+1)` for `k >= 1`.

use std::fmt::{self, Write as _};

use rug::{Complete, Integer, Rational};
use serde::{Deserialize, Serialize};

use super::series::{series_reciprocal_fdb, series_reversion, sine_series, PowerSeries};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Reversion,
    Lagrange,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Reversion => "reversion",
            Route::Lagrange => "lagrange",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientEntry {
    pub n: u32,
    pub value: Rational,
}

/// Odd-indexed `a_n`, strictly increasing in `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    route: Route,
    entries: Vec<CoefficientEntry>,
}

/// Wire form of one table row; integers travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub n: u32,
    pub num: String,
    pub den: String,
}

impl CoefficientTable {
    pub fn new(route: Route, entries: Vec<CoefficientEntry>) -> Result<Self> {
        for e in &entries {
            if e.n % 2 == 0 {
                return Err(Error::InvalidArgument(format!(
                    "coefficient index {} is not odd",
                    e.n
                )));
            }
        }
        if entries.windows(2).any(|w| w[0].n >= w[1].n) {
            return Err(Error::InvalidArgument(
                "coefficient indices must be strictly increasing".into(),
            ));
        }
        Ok(CoefficientTable { route, entries })
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn entries(&self) -> &[CoefficientEntry] {
        &self.entries
    }

    pub fn get(&self, n: u32) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&n, |e| e.n)
            .ok()
            .map(|i| &self.entries[i].value)
    }

    /// Largest index present, 0 for an empty table.
    pub fn max_index(&self) -> u32 {
        self.entries.last().map_or(0, |e| e.n)
    }

    /// Replaces one coefficient; used to inject faults into verification runs.
    pub fn with_entry(mut self, n: u32, value: Rational) -> Self {
        if let Some(e) = self.entries.iter_mut().find(|e| e.n == n) {
            e.value = value;
        }
        self
    }

    pub fn records(&self) -> Vec<CoefficientRecord> {
        self.entries
            .iter()
            .map(|e| CoefficientRecord {
                n: e.n,
                num: e.value.numer().to_string(),
                den: e.value.denom().to_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.records()).expect("records always serialize")
    }

    pub fn from_json(route: Route, json: &str) -> Result<Self> {
        let records: Vec<CoefficientRecord> =
            serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut entries = Vec::with_capacity(records.len());
        for r in records {
            let num: Integer = r
                .num
                .parse()
                .map_err(|_| Error::Malformed(format!("numerator `{}`", r.num)))?;
            let den: Integer = r
                .den
                .parse()
                .map_err(|_| Error::Malformed(format!("denominator `{}`", r.den)))?;
            if den <= 0 {
                return Err(Error::Malformed(format!("denominator `{}`", r.den)));
            }
            let value = Rational::from((num, den));
            if value.numer().to_string() != r.num || value.denom().to_string() != r.den {
                return Err(Error::Malformed(format!(
                    "a_{} = {}/{} is not in lowest terms",
                    r.n, r.num, r.den
                )));
            }
            entries.push(CoefficientEntry { n: r.n, value });
        }
        Self::new(route, entries)
    }

    /// Fixed-width text rendering, one coefficient per line.
    pub fn to_text(&self) -> String {
        let num_w = self
            .entries
            .iter()
            .map(|e| e.value.numer().to_string().len())
            .max()
            .unwrap_or(3)
            .max(3);
        let den_w = self
            .entries
            .iter()
            .map(|e| e.value.denom().to_string().len())
            .max()
            .unwrap_or(3)
            .max(3);
        let mut out = String::new();
        let _ = writeln!(out, "{:>4}  {:>num_w$}  {:>den_w$}", "n", "num", "den");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:>4}  {:>num_w$}  {:>den_w$}",
                e.n,
                e.value.numer().to_string(),
                e.value.denom().to_string()
            );
        }
        out
    }

    /// Coefficients `b_k` of `sum_k b_k π^(2k+1)`, `k = 0, 1, ...`.
    pub fn odd_power_coefficients(&self) -> Vec<(u32, Rational)> {
        self.entries
            .iter()
            .map(|e| {
                let k = (e.n - 1) / 2;
                if k == 0 {
                    (0, Rational::from((1, 2)) + &e.value)
                } else {
                    (k, e.value.clone())
                }
            })
            .collect()
    }
}

/// `u + sin u` through `u^order`.
pub fn shifted_map_series(order: usize) -> Result<PowerSeries> {
    Ok(PowerSeries::identity(order).add(&sine_series(order.max(1))?.with_order(order)))
}

fn check_odd(n: u32) -> Result<()> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "coefficient index must be odd and >= 1, got {n}"
        )));
    }
    Ok(())
}

fn minus_half_pow(n: u32) -> Rational {
    let den = Integer::from(1) << n;
    let sign = if n % 2 == 1 { -1 } else { 1 };
    Rational::from((Integer::from(sign), den))
}

/// Reversion coefficients `c_n` of `u + sin u` for `n <= order`.
pub fn reversion_coefficients(order: usize) -> Result<PowerSeries> {
    series_reversion(&shifted_map_series(order)?, order)
}

/// `a_n` for every odd `n <= n_max` by reverting `u + sin u`.
pub fn kaplan_coefficients_reversion(n_max: u32) -> Result<CoefficientTable> {
    check_odd(n_max)?;
    let t = reversion_coefficients(n_max as usize)?;
    for (n, c) in t.coefficients().iter().enumerate().step_by(2) {
        assert!(*c == 0, "even reversion coefficient c_{n} = {c} must vanish");
    }
    let entries = (1..=n_max)
        .step_by(2)
        .map(|n| CoefficientEntry {
            n,
            value: (&t.coefficients()[n as usize] * &minus_half_pow(n)).complete(),
        })
        .collect();
    CoefficientTable::new(Route::Reversion, entries)
}

/// `-sin t / t - 1` through `t^order`.
fn lagrange_bracket(order: usize) -> Result<PowerSeries> {
    let sine = sine_series(order + 1)?;
    let mut c: Vec<Rational> = sine.coefficients()[1..].iter().map(|x| -x.clone()).collect();
    c[0] -= 1;
    PowerSeries::new(c)
}

/// Single coefficient `a_n` through the Lagrange-inversion limit.
///
/// `a_n = (n-1)!/(n! 2^n) [t^(n-1)] (-sin t/t - 1)^(-n)`. Even `n` are zero
/// by parity and return an exact 0.
pub fn kaplan_coefficient_lagrange(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "coefficient index must be >= 1".into(),
        ));
    }
    if n % 2 == 0 {
        return Ok(Rational::new());
    }
    let order = (n - 1) as usize;
    let bracket = lagrange_bracket(order)?;
    let reciprocal = series_reciprocal_fdb(&bracket, order)?;
    let powered = reciprocal.pow(n);
    let coeff = &powered.coefficients()[order];
    let fact_ratio = Rational::from((
        Integer::factorial(n - 1).complete(),
        Integer::factorial(n).complete() << n,
    ));
    Ok((coeff * &fact_ratio).complete())
}

pub fn kaplan_coefficients_lagrange(n_max: u32) -> Result<CoefficientTable> {
    check_odd(n_max)?;
    let entries = (1..=n_max)
        .step_by(2)
        .map(|n| {
            kaplan_coefficient_lagrange(n).map(|value| CoefficientEntry { n, value })
        })
        .collect::<Result<Vec<_>>>()?;
    CoefficientTable::new(Route::Lagrange, entries)
}

/// A derivative value at `π/2`: either the symbol `π/2` or an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivativeValue {
    HalfPi,
    Exact(Rational),
}

impl fmt::Display for DerivativeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivativeValue::HalfPi => f.write_str("pi/2"),
            DerivativeValue::Exact(q) => write!(f, "{q}"),
        }
    }
}

/// `f^(n)(π/2)` for `f(x) = x - cos x`.
pub fn derivative_table_f(n: u32) -> DerivativeValue {
    match n {
        0 => DerivativeValue::HalfPi,
        1 => DerivativeValue::Exact(Rational::from(2)),
        // cos(π/2 + (n-2)π/2) = cos((n-1)π/2)
        _ => {
            let v = match (n - 1) % 4 {
                0 => 1,
                2 => -1,
                _ => 0,
            };
            DerivativeValue::Exact(Rational::from(v))
        }
    }
}

/// `g^(n)(π/2) = n! c_n` for `n = 1..=n_max`, `g` the inverse of `x - cos x`.
///
/// `g(π/2) = π/2` is the symbolic [`DerivativeValue::HalfPi`] and is not part
/// of the returned vector.
pub fn derivative_table_g(n_max: u32) -> Result<Vec<Rational>> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be >= 1".into()));
    }
    let t = reversion_coefficients(n_max as usize)?;
    Ok((1..=n_max)
        .map(|n| (&t.coefficients()[n as usize] * Integer::factorial(n).complete()).complete())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn big(num: &str, den: &str) -> Rational {
        Rational::from((num.parse::<Integer>().unwrap(), den.parse::<Integer>().unwrap()))
    }

    #[test]
    fn first_reversion_coefficients() {
        let t = kaplan_coefficients_reversion(3).unwrap();
        assert_eq!(t.get(1), Some(&q(-1, 4)));
        assert_eq!(t.get(3), Some(&q(-1, 768)));
        let t = kaplan_coefficients_reversion(11).unwrap();
        assert_eq!(t.get(7), Some(&q(-43, 165_150_720)));
        assert_eq!(t.get(11), Some(&big("-60623", "669692775628800")));
    }

    #[test]
    fn lagrange_matches_known_values() {
        assert_eq!(kaplan_coefficient_lagrange(1).unwrap(), q(-1, 4));
        assert_eq!(kaplan_coefficient_lagrange(3).unwrap(), q(-1, 768));
        assert_eq!(kaplan_coefficient_lagrange(4).unwrap(), q(0, 1));
        assert!(kaplan_coefficient_lagrange(0).is_err());
    }

    #[test]
    fn ninth_coefficient_is_223_not_233() {
        // Both routes land on 223; the often-quoted 233 does not satisfy
        // the reversion identity.
        let exact = q(-223, 47_563_407_360);
        assert_eq!(kaplan_coefficient_lagrange(9).unwrap(), exact);
        assert_eq!(
            kaplan_coefficients_reversion(9).unwrap().get(9),
            Some(&exact)
        );
        assert_ne!(exact, q(-233, 47_563_407_360));
    }

    #[test]
    fn routes_agree_through_fifteen() {
        let a = kaplan_coefficients_reversion(15).unwrap();
        let b = kaplan_coefficients_lagrange(15).unwrap();
        assert_eq!(a.entries(), b.entries());
        assert_eq!(a.route(), Route::Reversion);
        assert_eq!(b.route(), Route::Lagrange);
    }

    #[test]
    fn even_reversion_coefficients_vanish() {
        let t = reversion_coefficients(24).unwrap();
        for n in (0..=24).step_by(2) {
            assert_eq!(t.coefficients()[n], 0);
        }
    }

    #[test]
    fn f_derivatives() {
        let expect = [None, Some(2), Some(0), Some(-1), Some(0), Some(1), Some(0), Some(-1), Some(0), Some(1)];
        for (n, e) in expect.iter().enumerate() {
            let got = derivative_table_f(n as u32);
            match e {
                None => assert_eq!(got, DerivativeValue::HalfPi),
                Some(v) => assert_eq!(got, DerivativeValue::Exact(Rational::from(*v))),
            }
        }
    }

    #[test]
    fn g_derivatives() {
        let g = derivative_table_g(5).unwrap();
        assert_eq!(g[0], q(1, 2));
        assert_eq!(g[1], q(0, 1));
        assert_eq!(g[2], q(1, 16));
        assert_eq!(g[3], q(0, 1));
        // Taylor rebuild reproduces a_n: g^(n) (-1)^n / (2^n n!) = a_n
        let table = kaplan_coefficients_reversion(5).unwrap();
        for n in [1u32, 3, 5] {
            let rebuilt = Rational::from(&g[n as usize - 1] * &minus_half_pow(n))
                / Integer::factorial(n).complete();
            assert_eq!(Some(&rebuilt), table.get(n));
        }
        assert!(derivative_table_g(0).is_err());
    }

    #[test]
    fn odd_power_mapping() {
        let b = kaplan_coefficients_reversion(5).unwrap().odd_power_coefficients();
        assert_eq!(b[0], (0, q(1, 4)));
        assert_eq!(b[1], (1, q(-1, 768)));
        assert_eq!(b[2], (2, q(-1, 61440)));
    }

    #[test]
    fn json_shape_and_round_trip() {
        let t = kaplan_coefficients_reversion(3).unwrap();
        let json = t.to_json();
        assert_eq!(
            json,
            r#"[{"n":1,"num":"-1","den":"4"},{"n":3,"num":"-1","den":"768"}]"#
        );
        assert_eq!(CoefficientTable::from_json(Route::Reversion, &json).unwrap(), t);
        assert!(CoefficientTable::from_json(
            Route::Reversion,
            r#"[{"n":1,"num":"-2","den":"8"}]"#
        )
        .is_err());
        assert!(CoefficientTable::from_json(
            Route::Reversion,
            r#"[{"n":2,"num":"1","den":"8"}]"#
        )
        .is_err());
    }

    #[test]
    fn text_table_is_aligned() {
        let text = kaplan_coefficients_reversion(5).unwrap().to_text();
        let widths: Vec<usize> = text.lines().map(str::len).collect();
        assert!(widths.windows(2).all(|w| w[0] == w[1]), "{text}");
        assert!(text.contains("61440"));
    }
}
