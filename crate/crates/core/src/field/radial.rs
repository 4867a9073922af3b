use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{to_f64, Rational};

/// Relative error above which the double-precision sum is recomputed exactly.
const REFINE_THRESHOLD: f64 = 1e-14;

/// `Σ cₙ sⁿ / (1+s)^m` for exact coefficients `c₀…c_m`.
///
/// The sum is evaluated in double precision with a running error bound.
/// High orders have large alternating coefficients whose sum cancels to a
/// small value; when the bound exceeds [`REFINE_THRESHOLD`] the sum is redone
/// in exact arithmetic at the dyadic rational `s` and rounded once.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RadialSum {
    coeffs: Vec<f64>,
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl RadialSum {
    pub(crate) fn new(coeffs: &[Rational]) -> Self {
        let denominator = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numerators = coeffs
            .iter()
            .map(|c| c.numer() * (&denominator / c.denom()))
            .collect();
        Self {
            coeffs: coeffs.iter().map(to_f64).collect(),
            numerators,
            denominator,
        }
    }

    fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub(crate) fn eval(&self, s: f64) -> f64 {
        let (value, bound) = self.eval_fast(s);
        if bound <= REFINE_THRESHOLD * value.abs() || !s.is_finite() {
            value
        } else {
            self.eval_exact(s)
        }
    }

    /// Value and an upper bound on its absolute rounding error.
    fn eval_fast(&self, s: f64) -> (f64, f64) {
        let m = self.order();
        let (value, magnitude) = if s <= 1.0 {
            let (v, a) = self
                .coeffs
                .iter()
                .rev()
                .fold((0.0, 0.0), |(v, a), &c| (v * s + c, a * s + c.abs()));
            let scale = (1.0 + s).powi(-(m as i32));
            (v * scale, a * scale)
        } else {
            // s^m·Σ cₙ s^{n−m}, with s/(1+s) factored out
            let inv = 1.0 / s;
            let (v, a) = self
                .coeffs
                .iter()
                .fold((0.0, 0.0), |(v, a), &c| (v * inv + c, a * inv + c.abs()));
            let scale = (s / (1.0 + s)).powi(m as i32);
            (v * scale, a * scale)
        };
        let bound = magnitude * (4 * m + 4) as f64 * f64::EPSILON;
        (value, bound)
    }

    fn eval_exact(&self, s: f64) -> f64 {
        let Some(exact) = Rational::from_float(s) else {
            return f64::NAN;
        };
        let (k, w) = (exact.numer(), exact.denom());
        // Σ Cₙ kⁿ w^{m−n}, by homogeneous Horner
        let mut acc = BigInt::zero();
        let mut w_pow = BigInt::one();
        for c in self.numerators.iter().rev() {
            acc = acc * k + c * &w_pow;
            w_pow *= w;
        }
        // divided by D·w^m, over (1+s)^m = (w+k)^m / w^m
        let denom = &self.denominator * num_traits::pow(w + k, self.order());
        let ratio = Rational::new_raw(acc, denom);
        ratio.to_f64().unwrap_or(f64::NAN)
    }
}
