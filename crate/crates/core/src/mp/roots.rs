use rug::Float;

use crate::error::{Error, Result};

/// Bracketed Newton: takes the Newton step when it stays inside the current
/// bracket, bisects otherwise. `eval` returns `(F(x), F'(x))`; `F(lo)` and
/// `F(hi)` must have opposite signs (or one of them vanish).
///
/// Stops when `|F| <= stop` or the bracket has collapsed to working
/// precision.
pub fn bracketed_newton<F>(
    mut eval: F,
    lo: Float,
    hi: Float,
    start: Option<Float>,
    stop: &Float,
    max_iter: u32,
    method: &'static str,
) -> Result<Float>
where
    F: FnMut(&Float) -> (Float, Float),
{
    let bits = lo.prec().max(hi.prec());
    let (mut lo, mut hi) = (lo, hi);
    let (f_lo, _) = eval(&lo);
    if f_lo.is_zero() {
        return Ok(lo);
    }
    let (f_hi, _) = eval(&hi);
    if f_hi.is_zero() {
        return Ok(hi);
    }
    if f_lo.is_sign_negative() == f_hi.is_sign_negative() {
        return Err(Error::InvalidArgument(format!(
            "{method}: root not bracketed"
        )));
    }
    let lo_negative = f_lo.is_sign_negative();
    let mut x = start
        .filter(|s| *s > lo && *s < hi)
        .unwrap_or_else(|| Float::with_val(bits, &lo + &hi) / 2u32);

    for _ in 0..max_iter {
        let (f, df) = eval(&x);
        if f.clone().abs() <= *stop {
            return Ok(x);
        }
        if f.is_sign_negative() == lo_negative {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let width = Float::with_val(bits, &hi - &lo);
        let scale = Float::with_val(bits, lo.abs_ref()).max(&Float::with_val(bits, hi.abs_ref()));
        let floor = Float::with_val(bits, scale.max(&Float::with_val(bits, 1)) >> (bits as i32 - 4));
        if width <= floor {
            return Ok(x);
        }
        let newton = if df.is_zero() || !df.is_finite() {
            None
        } else {
            let candidate = Float::with_val(bits, &x - Float::with_val(bits, &f / &df));
            (candidate > lo && candidate < hi).then_some(candidate)
        };
        x = newton.unwrap_or_else(|| Float::with_val(bits, &lo + &hi) / 2u32);
    }
    Err(Error::NonConvergence {
        method,
        iterations: max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let bits = 200;
        let stop = Float::with_val(bits, 1e-55);
        let root = bracketed_newton(
            |x| {
                (
                    Float::with_val(bits, x.square_ref()) - 2u32,
                    Float::with_val(bits, x * 2u32),
                )
            },
            Float::with_val(bits, 0),
            Float::with_val(bits, 2),
            None,
            &stop,
            200,
            "sqrt",
        )
        .unwrap();
        let exact = Float::with_val(bits, 2).sqrt();
        assert!(Float::with_val(bits, &root - &exact).abs() < 1e-54);
    }

    #[test]
    fn rejects_unbracketed() {
        let bits = 64;
        let r = bracketed_newton(
            |x| (Float::with_val(bits, x.square_ref()) + 1u32, Float::with_val(bits, x * 2u32)),
            Float::with_val(bits, -1),
            Float::with_val(bits, 1),
            None,
            &Float::with_val(bits, 1e-10),
            50,
            "none",
        );
        assert!(r.is_err());
    }

    #[test]
    fn survives_flat_derivative() {
        // x^3 has a triple root; Newton alone crawls, bisection finishes
        let bits = 128;
        let root = bracketed_newton(
            |x| {
                let cube = Float::with_val(bits, x.square_ref()) * x;
                (cube, Float::with_val(bits, x.square_ref()) * 3u32)
            },
            Float::with_val(bits, -1),
            Float::with_val(bits, 0.5),
            None,
            &Float::with_val(bits, 1e-90),
            1000,
            "cube",
        )
        .unwrap();
        assert!(root.abs() < 1e-29);
    }
}
