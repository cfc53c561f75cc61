//! Truncated formal power series over exact rationals.

use std::fmt;

use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

use super::partitions::enumerate_partitions;
use crate::error::{Error, Result};

/// `sum_{i=0}^{order} c_i u^i`, with everything above `order` unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coefficients: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument(
                "a power series needs at least a constant term".into(),
            ));
        }
        Ok(PowerSeries { coefficients })
    }

    /// Convenience for literals: `(numerator, denominator)` pairs.
    pub fn from_ratios(pairs: &[(i64, i64)]) -> Result<Self> {
        if pairs.iter().any(|&(_, d)| d == 0) {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Self::new(pairs.iter().map(|&(n, d)| Rational::from((n, d))).collect())
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coefficients: vec![Rational::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = Rational::from(1);
        s
    }

    /// The series `u` (identity under composition).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coefficients[1] = Rational::from(1);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coeff(&self, i: usize) -> Option<&Rational> {
        self.coefficients.get(i)
    }

    /// Zero constant term: the series may be substituted into another one.
    pub fn is_composable(&self) -> bool {
        self.coefficients[0] == 0
    }

    /// Truncates, or zero-pads, to exactly `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coefficients = self.coefficients.clone();
        coefficients.resize(order + 1, Rational::new());
        PowerSeries { coefficients }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coefficients = (0..=order)
            .map(|i| (&self.coefficients[i] + &other.coefficients[i]).complete())
            .collect();
        PowerSeries { coefficients }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coefficients = (0..=order)
            .map(|i| (&self.coefficients[i] - &other.coefficients[i]).complete())
            .collect();
        PowerSeries { coefficients }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| (c * factor).complete())
            .collect();
        PowerSeries { coefficients }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::new(); order + 1];
        for (i, a) in self.coefficients.iter().take(order + 1).enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coefficients.iter().take(order + 1 - i).enumerate() {
                if *b != 0 {
                    out[i + j] += (a * b).complete();
                }
            }
        }
        PowerSeries { coefficients: out }
    }

    /// `self^n` by repeated squaring, at the order of `self`.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `self(inner(u))` by Horner's scheme; `inner` must be composable.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.is_composable() {
            return Err(Error::InvalidArgument(
                "inner series of a composition must have zero constant term".into(),
            ));
        }
        let order = self.order().min(inner.order());
        let inner = inner.with_order(order);
        let mut acc = Self::zero(order);
        for c in self.coefficients.iter().take(order + 1).rev() {
            acc = acc.mul(&inner);
            acc.coefficients[0] += c;
        }
        Ok(acc)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

fn factorial(n: u32) -> Integer {
    Integer::factorial(n).complete()
}

/// Maclaurin series of `sin u` through `u^order`.
pub fn sine_series(order: usize) -> Result<PowerSeries> {
    if order < 1 {
        return Err(Error::InvalidArgument(
            "sine series needs order >= 1".into(),
        ));
    }
    let mut s = PowerSeries::zero(order);
    for m in 0..=(order - 1) / 2 {
        let k = 2 * m + 1;
        let sign = if m % 2 == 0 { 1 } else { -1 };
        s.coefficients[k] = Rational::from((Integer::from(sign), factorial(k as u32)));
    }
    Ok(s)
}

/// Reciprocal `1/s` through `u^order` via the Faà di Bruno expansion of
/// `(1/h)^(k)`.
///
/// For each `k` the coefficient is a sum over partitions `{m_j}` of `k`, with
/// `m_0 = k - sum m_j`:
///
/// ```text
/// [u^k] 1/s = sum (-1)^(k-m_0) (k-m_0)! / prod m_j! * prod s_j^(m_j) / s_0^(k-m_0+1)
/// ```
///
/// Coefficients of `s` above its order are taken as zero. No linear system
/// is solved.
pub fn series_reciprocal_fdb(s: &PowerSeries, order: usize) -> Result<PowerSeries> {
    let s0 = &s.coefficients[0];
    if *s0 == 0 {
        return Err(Error::NonInvertibleSeries);
    }
    let s = s.with_order(order);
    let inv_s0 = Rational::from(s0.recip_ref());
    // powers of 1/s_0 up to order + 1
    let mut inv_pows = Vec::with_capacity(order + 2);
    inv_pows.push(Rational::from(1));
    for i in 1..=order + 1 {
        let next = (&inv_pows[i - 1] * &inv_s0).complete();
        inv_pows.push(next);
    }

    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order as u32 {
        let mut acc = Rational::new();
        'partition: for p in enumerate_partitions(k) {
            let mut term = Rational::from(1);
            let mut denom = Integer::from(1);
            for (j, m) in p.parts() {
                let sj = &s.coefficients[j as usize];
                if *sj == 0 {
                    continue 'partition;
                }
                term *= Rational::from(sj.pow(m));
                denom *= factorial(m);
            }
            let parts = p.part_count();
            let m0 = k - parts;
            let mut weight = Rational::from((factorial(k - m0), denom));
            if (k - m0) % 2 == 1 {
                weight = -weight;
            }
            term *= weight;
            term *= &inv_pows[(k - m0 + 1) as usize];
            acc += term;
        }
        out.push(acc);
    }
    PowerSeries::new(out)
}

/// Compositional inverse `t` of `s`, so that `s(t(v)) = v + O(v^(order+1))`.
///
/// Requires `s_0 = 0` and `s_1 != 0`. Coefficients are found one order at a
/// time: with `t_1..t_{n-1}` known, `[v^n] t^j` for `j >= 2` is fixed, and
/// `t_n` is whatever cancels `sum_{j>=2} s_j [v^n] t^j`. The power table is
/// extended one column per step.
pub fn series_reversion(s: &PowerSeries, order: usize) -> Result<PowerSeries> {
    if s.coefficients[0] != 0 {
        return Err(Error::NonReversibleSeries(
            "constant term must be zero".into(),
        ));
    }
    let s1 = match s.coeff(1) {
        Some(c) if *c != 0 => c.clone(),
        _ => {
            return Err(Error::NonReversibleSeries(
                "linear coefficient must be non-zero".into(),
            ))
        }
    };
    let s = s.with_order(order);
    let mut t = vec![Rational::new(); order + 1];
    if order == 0 {
        return PowerSeries::new(t);
    }
    t[1] = Rational::from(s1.recip_ref());

    // pw[j][m] = [v^m] t^j, only m >= j is ever non-zero
    let mut pw: Vec<Vec<Rational>> = vec![vec![Rational::new(); order + 1]; order + 1];
    pw[1][1] = t[1].clone();
    for n in 2..=order {
        for j in 2..=n {
            let mut acc = Rational::new();
            for i in 1..=n + 1 - j {
                if t[i] != 0 && pw[j - 1][n - i] != 0 {
                    acc += (&t[i] * &pw[j - 1][n - i]).complete();
                }
            }
            pw[j][n] = acc;
        }
        let mut acc = Rational::new();
        for j in 2..=n {
            if s.coefficients[j] != 0 && pw[j][n] != 0 {
                acc += (&s.coefficients[j] * &pw[j][n]).complete();
            }
        }
        t[n] = -(acc / &s1);
        pw[1][n] = t[n].clone();
    }
    PowerSeries::new(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    /// Reciprocal by forward substitution on `s * r = 1`.
    fn reciprocal_by_solve(s: &PowerSeries, order: usize) -> Vec<Rational> {
        let s = s.with_order(order);
        let c = s.coefficients();
        let mut r: Vec<Rational> = Vec::new();
        for n in 0..=order {
            let mut rhs = if n == 0 { q(1, 1) } else { q(0, 1) };
            for i in 1..=n {
                rhs -= Rational::from(&c[i] * &r[n - i]);
            }
            r.push(rhs / &c[0]);
        }
        r
    }

    #[test]
    fn sine_coefficients() {
        let s = sine_series(3).unwrap();
        assert_eq!(s.coefficients(), &[q(0, 1), q(1, 1), q(0, 1), q(-1, 6)]);
        assert_eq!(sine_series(5).unwrap().coefficients()[5], q(1, 120));
        assert!(sine_series(0).is_err());
    }

    #[test]
    fn reciprocal_geometric() {
        let s = PowerSeries::from_ratios(&[(1, 1), (1, 1)]).unwrap();
        let r = series_reciprocal_fdb(&s, 3).unwrap();
        assert_eq!(r.coefficients(), &[q(1, 1), q(-1, 1), q(1, 1), q(-1, 1)]);
    }

    #[test]
    fn reciprocal_of_constant() {
        let s = PowerSeries::from_ratios(&[(2, 1)]).unwrap();
        let r = series_reciprocal_fdb(&s, 2).unwrap();
        assert_eq!(r.coefficients(), &[q(1, 2), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn reciprocal_of_shifted_cosine_bracket() {
        // cos(pi/2 + t)/t - 1 = -2 + t^2/6 - t^4/120
        let s = PowerSeries::from_ratios(&[(-2, 1), (0, 1), (1, 6), (0, 1), (-1, 120)]).unwrap();
        let r = series_reciprocal_fdb(&s, 4).unwrap();
        let oracle = reciprocal_by_solve(&s, 4);
        assert_eq!(r.coefficients(), oracle.as_slice());
        assert_eq!(r.coefficients()[0], q(-1, 2));
        assert_eq!(r.coefficients()[2], q(-1, 24));
    }

    #[test]
    fn reciprocal_rejects_zero_constant() {
        let s = PowerSeries::from_ratios(&[(0, 1), (1, 1)]).unwrap();
        assert_eq!(
            series_reciprocal_fdb(&s, 3),
            Err(Error::NonInvertibleSeries)
        );
    }

    #[test]
    fn reversion_linear() {
        let s = PowerSeries::from_ratios(&[(0, 1), (2, 1)]).unwrap();
        let t = series_reversion(&s, 1).unwrap();
        assert_eq!(t.coefficients(), &[q(0, 1), q(1, 2)]);
    }

    #[test]
    fn reversion_of_u_plus_sin_u() {
        let s = PowerSeries::identity(3).add(&sine_series(3).unwrap());
        let t = series_reversion(&s, 3).unwrap();
        assert_eq!(t.coefficients()[3], q(1, 96));
        // a_3 = c_3 (-1/2)^3
        assert_eq!(Rational::from(&t.coefficients()[3] * q(-1, 8)), q(-1, 768));
    }

    #[test]
    fn reversion_of_u_plus_u_squared() {
        let s = PowerSeries::from_ratios(&[(0, 1), (1, 1), (1, 1), (0, 1)]).unwrap();
        let t = series_reversion(&s, 3).unwrap();
        assert_eq!(t.coefficients(), &[q(0, 1), q(1, 1), q(-1, 1), q(2, 1)]);
        assert_eq!(s.compose(&t).unwrap(), PowerSeries::identity(3));
    }

    #[test]
    fn reversion_preconditions() {
        let s = PowerSeries::from_ratios(&[(1, 1), (1, 1)]).unwrap();
        assert!(matches!(
            series_reversion(&s, 3),
            Err(Error::NonReversibleSeries(_))
        ));
        let s = PowerSeries::from_ratios(&[(0, 1), (0, 1), (1, 1)]).unwrap();
        assert!(matches!(
            series_reversion(&s, 3),
            Err(Error::NonReversibleSeries(_))
        ));
    }

    #[test]
    fn product_truncates_to_min_order() {
        let a = PowerSeries::from_ratios(&[(1, 1), (1, 1), (1, 1)]).unwrap();
        let b = PowerSeries::from_ratios(&[(1, 1), (1, 1)]).unwrap();
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.pow(3).coefficients(), &[q(1, 1), q(3, 1), q(6, 1)]);
    }

    fn arb_ratio() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::from((n, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reciprocal_soundness(
            head in (-20i64..=20, 1i64..=12).prop_filter("nonzero", |(n, _)| *n != 0),
            tail in prop::collection::vec(arb_ratio(), 0..=8),
            order in 0usize..=8,
        ) {
            let mut c = vec![Rational::from(head)];
            c.extend(tail);
            let s = PowerSeries::new(c).unwrap();
            let r = series_reciprocal_fdb(&s, order).unwrap();
            let prod = s.with_order(order).mul(&r);
            prop_assert_eq!(prod, PowerSeries::one(order));
        }

        #[test]
        fn reversion_soundness(
            lin in (-20i64..=20, 1i64..=12).prop_filter("nonzero", |(n, _)| *n != 0),
            tail in prop::collection::vec(arb_ratio(), 0..=7),
            order in 1usize..=8,
        ) {
            let mut c = vec![Rational::new(), Rational::from(lin)];
            c.extend(tail);
            let s = PowerSeries::new(c).unwrap().with_order(order);
            let t = series_reversion(&s, order).unwrap();
            prop_assert_eq!(s.compose(&t).unwrap(), PowerSeries::identity(order));
        }
    }
}
