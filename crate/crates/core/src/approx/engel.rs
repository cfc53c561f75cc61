//! Engel expansions `x = 1/a_1 + 1/(a_1 a_2) + ...` by the greedy
//! recurrence `a_k = ceil(1/u_k)`, `u_{k+1} = a_k u_k - 1`.

use std::cmp::Ordering;

use rug::float::Round;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mp::context::{pow10, BigReal, PrecisionContext};
use crate::mp::oracle::dottie_newton;

#[derive(Debug, Clone, PartialEq)]
pub struct EngelExpansion {
    pub terms: Vec<Integer>,
    /// `|x - sum_{j<=k} 1/(a_1...a_j)|` at working precision.
    pub reconstruction_error: BigReal,
    /// Set when the certified error swallowed the remainder before the
    /// requested number of terms was reached.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngelRecord {
    pub terms: Vec<String>,
    pub reconstruction_error: String,
    pub truncated: bool,
}

impl EngelExpansion {
    /// `sum_{j<=k} 1/(a_1...a_j)`, exactly.
    pub fn reconstruction(&self) -> Rational {
        partial_sum(&self.terms)
    }

    /// `1/(a_1...a_k)`, the bound on the reconstruction error.
    pub fn residual_bound(&self) -> Rational {
        let mut product = Integer::from(1);
        for a in &self.terms {
            product *= a;
        }
        Rational::from((Integer::from(1), product))
    }

    pub fn record(&self) -> EngelRecord {
        EngelRecord {
            terms: self.terms.iter().map(Integer::to_string).collect(),
            reconstruction_error: self.reconstruction_error.to_decimal_string(),
            truncated: self.truncated,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("record always serializes")
    }
}

impl EngelRecord {
    pub fn parse_terms(&self) -> Result<Vec<Integer>> {
        self.terms
            .iter()
            .map(|t| {
                t.parse::<Integer>()
                    .ok()
                    .filter(|a| *a > 0)
                    .ok_or_else(|| Error::Malformed(format!("Engel term `{t}`")))
            })
            .collect()
    }
}

fn partial_sum(terms: &[Integer]) -> Rational {
    let mut product = Integer::from(1);
    let mut sum = Rational::new();
    for a in terms {
        product *= a;
        sum += Rational::from((Integer::from(1), product.clone()));
    }
    sum
}

/// Expansion of an exact rational in `(0, 1]`; always terminates.
pub fn engel_expansion_exact(x: &Rational) -> Result<Vec<Integer>> {
    if *x <= 0 || *x > 1 {
        return Err(Error::InvalidArgument(format!("Engel input {x} outside (0, 1]")));
    }
    let mut u = x.clone();
    let mut terms = Vec::new();
    while u != 0 {
        let a = Rational::from(u.recip_ref()).ceil().into_numer_denom().0;
        u = u * &a - 1u32;
        terms.push(a);
    }
    Ok(terms)
}

/// Expansion of `x`, taken as exact, to at most `n_terms` terms.
pub fn engel_expansion(x: &BigReal, n_terms: usize, ctx: &PrecisionContext) -> Result<EngelExpansion> {
    engel_expansion_with_error(x, &Float::with_val(ctx.working_bits(), 0), n_terms, ctx)
}

/// Like [`engel_expansion`] for an input known only to within `input_error`.
///
/// The uncertainty of each remainder `u_k` is propagated (it is multiplied by
/// `a_k`, plus rounding); the expansion stops with `truncated` set as soon as
/// the next term is no longer determined, i.e. `ceil(1/u)` differs across
/// `u ± error` or the error reaches `u`.
pub fn engel_expansion_with_error(
    x: &BigReal,
    input_error: &Float,
    n_terms: usize,
    ctx: &PrecisionContext,
) -> Result<EngelExpansion> {
    let bits = ctx.working_bits();
    let xf = Float::with_val(bits, x.value());
    if !(xf > 0 && xf <= 1) {
        return Err(Error::InvalidArgument(format!("Engel input {x} outside (0, 1]")));
    }
    let mut u = xf.clone();
    let mut err = Float::with_val(bits, input_error.abs_ref());
    let ulp = Float::with_val(bits, 1) >> (bits as i32 - 1);
    let mut terms = Vec::with_capacity(n_terms);
    let mut truncated = false;
    while terms.len() < n_terms {
        if u.is_zero() && err.is_zero() {
            break;
        }
        let lo = Float::with_val(bits, &u - &err);
        if lo <= 0 {
            truncated = true;
            break;
        }
        let hi = Float::with_val(bits, &u + &err);
        let ceil_of_recip = |v: &Float, round: Round| -> Integer {
            let (r, _) = Float::with_val_round(bits, v.recip_ref(), round);
            r.ceil().to_integer().expect("finite")
        };
        let a = ceil_of_recip(&u, Round::Nearest);
        if ceil_of_recip(&lo, Round::Up) != a || ceil_of_recip(&hi, Round::Down) != a {
            truncated = true;
            break;
        }
        let (product, dir) = Float::with_val_round(bits, &u * &a, Round::Nearest);
        let (next, dir2) = Float::with_val_round(bits, &product - 1u32, Round::Nearest);
        err *= &a;
        if dir != Ordering::Equal {
            err += &ulp * Float::with_val(bits, product.abs_ref());
        }
        if dir2 != Ordering::Equal {
            err += &ulp;
        }
        u = next;
        terms.push(a);
    }
    let rebuilt = Float::with_val(bits, &partial_sum(&terms));
    let reconstruction_error = BigReal::new(Float::with_val(bits, &xf - rebuilt).abs(), *ctx);
    Ok(EngelExpansion {
        terms,
        reconstruction_error,
        truncated,
    })
}

/// Engel expansion of the fixed point, carrying the oracle's certified
/// uncertainty `10^(-P-5)`.
pub fn engel_of_dottie(n_terms: usize, ctx: &PrecisionContext) -> Result<EngelExpansion> {
    let d = dottie_newton(ctx)?;
    let uncertainty = pow10(ctx.working_bits(), -(ctx.decimal_digits() as i32) - 5);
    engel_expansion_with_error(&d, &uncertainty, n_terms, ctx)
}

/// Documented precision heuristic: `P >= 3 n + 20`.
pub fn recommended_precision(n_terms: usize) -> u32 {
    3 * n_terms as u32 + 20
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(p: u32) -> PrecisionContext {
        PrecisionContext::new(p).unwrap()
    }

    #[test]
    fn trivial_inputs() {
        let c = ctx(20);
        let half = engel_expansion(&BigReal::from_f64(0.5, c), 1, &c).unwrap();
        assert_eq!(half.terms, vec![Integer::from(2)]);
        assert!(half.reconstruction_error.value().is_zero());
        assert!(!half.truncated);
        let one = engel_expansion(&BigReal::from_f64(1.0, c), 5, &c).unwrap();
        assert_eq!(one.terms, vec![Integer::from(1)]);
        assert!(engel_expansion(&BigReal::from_f64(1.5, c), 3, &c).is_err());
        assert!(engel_expansion(&BigReal::from_f64(0.0, c), 3, &c).is_err());
        assert_eq!(
            engel_expansion_exact(&Rational::from((3, 7))).unwrap(),
            [3, 4, 7].map(Integer::from).to_vec()
        );
    }

    #[test]
    fn dottie_terms_stable_under_doubling() {
        let e200 = engel_of_dottie(20, &ctx(200)).unwrap();
        let e400 = engel_of_dottie(20, &ctx(400)).unwrap();
        assert!(!e200.truncated && !e400.truncated);
        assert_eq!(e200.terms, e400.terms);
        // independent 400-digit run of the same recurrence
        let golden: [u64; 20] = [
            2, 3, 3, 4, 5, 15, 17, 66, 196, 233, 284, 375, 1613, 2131, 3574, 14122, 24171, 49097,
            56871, 69361,
        ];
        assert_eq!(e200.terms, golden.map(Integer::from).to_vec());
        assert!(e200.terms.windows(2).all(|w| w[0] <= w[1]));
        let bound = Float::with_val(400, &e200.residual_bound());
        assert!(*e200.reconstruction_error.value() < bound);
    }

    #[test]
    fn partial_reconstructions_increase_toward_input() {
        let c = ctx(100);
        let e = engel_of_dottie(25, &c).unwrap();
        let d = dottie_newton(&c).unwrap();
        let mut last = Rational::new();
        for k in 1..=e.terms.len() {
            let s = partial_sum(&e.terms[..k]);
            assert!(s > last);
            assert!(Float::with_val(c.working_bits(), &s) < *d.value());
            last = s;
        }
    }

    #[test]
    fn low_precision_truncates() {
        let c = ctx(12);
        let e = engel_of_dottie(200, &c).unwrap();
        assert!(e.truncated);
        assert!(e.terms.len() < 200);
        let e20 = engel_of_dottie(e.terms.len(), &ctx(200)).unwrap();
        assert_eq!(e20.terms, e.terms);
    }

    #[test]
    fn json_shape() {
        let c = ctx(20);
        let e = engel_expansion(&BigReal::from_f64(0.5, c), 1, &c).unwrap();
        let json = e.to_json();
        assert_eq!(json, r#"{"terms":["2"],"reconstruction_error":"0","truncated":false}"#);
        let rec: EngelRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(rec.parse_terms().unwrap(), e.terms);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn rationals_terminate_and_rebuild(p in 1u64..10_000, q in 2u64..10_000) {
            prop_assume!(p < q);
            let x = Rational::from((p, q));
            let terms = engel_expansion_exact(&x).unwrap();
            prop_assert!(terms.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(partial_sum(&terms), x);
        }
    }
}
