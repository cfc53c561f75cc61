//! Arbitrary-precision quadrature: composite Gauss–Legendre for smooth
//! oscillatory integrands, tanh-sinh for endpoint singularities.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// refined by Newton on `P_n` at `bits` of precision.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<Float>,
    weights: Vec<Float>,
}

impl GaussLegendre {
    pub fn new(n: usize, bits: u32) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let eps = Float::with_val(bits, 1) >> (bits as i32 - 6);
        for i in 1..=n.div_ceil(2) {
            let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut x = Float::with_val(bits, guess);
            let mut deriv = Float::new(bits);
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, &x);
                deriv = dp;
                let dx = Float::with_val(bits, &p / &deriv);
                x -= &dx;
                if dx.abs() <= eps {
                    let (_, dp) = legendre_with_derivative(n, &x);
                    deriv = dp;
                    break;
                }
            }
            let one_minus_sq = Float::with_val(bits, 1 - Float::with_val(bits, x.square_ref()));
            let w = Float::with_val(bits, 2) / (one_minus_sq * Float::with_val(bits, deriv.square_ref()));
            if 2 * i - 1 == n {
                // centre node of an odd rule
                nodes.push(Float::with_val(bits, 0));
                weights.push(w);
            } else {
                nodes.push(Float::with_val(bits, -&x));
                weights.push(w.clone());
                nodes.push(x);
                weights.push(w);
            }
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f` split into `panels` equal sub-intervals. Panels are reduced
    /// left to right.
    pub fn integrate<F>(&self, mut f: F, a: &Float, b: &Float, panels: usize) -> Float
    where
        F: FnMut(&Float) -> Float,
    {
        let bits = a.prec().max(b.prec());
        let width = Float::with_val(bits, b - a) / panels as u32;
        let half = Float::with_val(bits, &width / 2u32);
        let mut total = Float::with_val(bits, 0);
        for p in 0..panels {
            let mid = Float::with_val(bits, a + Float::with_val(bits, &width * (p as u32))) + &half;
            let mut panel = Float::with_val(bits, 0);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let t = Float::with_val(bits, &half * x) + &mid;
                panel += f(&t) * w;
            }
            total += panel * &half;
        }
        total
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: &Float) -> (Float, Float) {
    let bits = x.prec();
    let mut p_prev = Float::with_val(bits, 1);
    let mut p = Float::with_val(bits, x);
    for k in 2..=n {
        let next = (Float::with_val(bits, x * &p) * (2 * k - 1) as u32
            - Float::with_val(bits, &p_prev * (k - 1) as u32))
            / k as u32;
        p_prev = std::mem::replace(&mut p, next);
    }
    if n == 0 {
        return (Float::with_val(bits, 1), Float::with_val(bits, 0));
    }
    let num = Float::with_val(bits, x * &p) - &p_prev;
    let den = Float::with_val(bits, x.square_ref()) - 1u32;
    let dp = num * n as u32 / den;
    (p, dp)
}

/// Double-exponential quadrature on `[a, b]`.
///
/// `decay` (in `(0, 1]`) is the exponent with which the integrand may blow
/// up at an endpoint relative to `1/(x-a)`: the node range is widened by
/// `1/decay` so the truncated tail stays below `10^-digits`.
#[derive(Debug, Clone, Copy)]
pub struct TanhSinh {
    pub digits: u32,
    pub decay: f64,
    pub max_level: u32,
}

impl TanhSinh {
    pub fn new(digits: u32) -> Self {
        TanhSinh {
            digits,
            decay: 1.0,
            max_level: 14,
        }
    }

    pub fn with_decay(mut self, decay: f64) -> Self {
        self.decay = decay.clamp(1e-3, 1.0);
        self
    }

    pub fn integrate<F>(&self, mut f: F, a: &Float, b: &Float) -> Result<Float>
    where
        F: FnMut(&Float) -> Float,
    {
        let bits = a.prec().max(b.prec());
        let width = Float::with_val(bits, b - a);
        let target = (self.digits as f64 + 10.0) * std::f64::consts::LN_10 / self.decay;
        let s_max = (target / std::f64::consts::PI).asinh();
        let eps = Float::with_val(bits, 10).pow(-(self.digits as i32));
        let half_pi = Float::with_val(bits, Constant::Pi) / 2u32;

        // contribution of abscissa s (weight times integrand, before h)
        let mut node = |s: &Float| -> Float {
            let u = Float::with_val(bits, s.sinh_ref()) * &half_pi;
            let two_u = Float::with_val(bits, &u * 2u32);
            // sigma = 1/(1+e^{-2u}), complement = 1/(1+e^{2u})
            let e_pos = Float::with_val(bits, two_u.exp_ref());
            let sigma = Float::with_val(bits, &e_pos / Float::with_val(bits, &e_pos + 1u32));
            let comp = Float::with_val(bits, 1u32 / Float::with_val(bits, &e_pos + 1u32));
            if sigma.is_zero() || comp.is_zero() {
                return Float::with_val(bits, 0);
            }
            let x = if s.is_sign_negative() {
                Float::with_val(bits, &width * &sigma) + a
            } else {
                Float::with_val(bits, b - Float::with_val(bits, &width * &comp))
            };
            let w = Float::with_val(bits, &width * &sigma) * &comp
                * Float::with_val(bits, s.cosh_ref())
                * Float::with_val(bits, Constant::Pi);
            let fx = f(&x);
            if !fx.is_finite() {
                return Float::with_val(bits, 0);
            }
            w * fx
        };

        // level 0: h = 1, s = -K..K
        let mut h = Float::with_val(bits, 1);
        let k_max = s_max.ceil() as i64;
        let mut raw = Float::with_val(bits, 0);
        for k in -k_max..=k_max {
            let s = Float::with_val(bits, k);
            raw += node(&s);
        }
        let mut estimate = Float::with_val(bits, &raw * &h);
        for _level in 1..=self.max_level {
            h /= 2u32;
            // new odd abscissae
            let count = (s_max / h.to_f64()).ceil() as i64;
            let mut k = 1i64;
            while k <= count {
                let s = Float::with_val(bits, &h * k);
                raw += node(&s);
                raw += node(&Float::with_val(bits, -&s));
                k += 2;
            }
            let next = Float::with_val(bits, &raw * &h);
            let diff = Float::with_val(bits, &next - &estimate).abs();
            let scale = Float::with_val(bits, next.abs_ref()).max(&Float::with_val(bits, 1));
            estimate = next;
            if diff <= Float::with_val(bits, &eps * &scale) {
                return Ok(estimate);
            }
        }
        Err(Error::NonConvergence {
            method: "tanh-sinh quadrature",
            iterations: self.max_level,
        })
    }
}
