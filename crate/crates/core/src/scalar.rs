//! Floating-point abstraction shared by the model math.
//!
//! Everything that only needs field arithmetic plus `exp`/`ln`/`tanh` is
//! written against [`Scalar`], so the same code runs in `f32` and `f64`.
//! Spectral routines work in `f64` only (see [`crate::exact::spectrum`]).

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the value is not representable
    /// at all, which cannot happen for the IEEE types implementing this trait.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `ln(e^a + e^b)` without overflow. Handles `-inf` operands.
#[inline]
pub fn log_add_exp<S: Scalar>(a: S, b: S) -> S {
    if a == S::neg_infinity() {
        return b;
    }
    if b == S::neg_infinity() {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Log-sum-exp over a slice; `-inf` for an empty slice.
pub fn log_sum_exp<S: Scalar>(xs: &[S]) -> S {
    let max = xs.iter().copied().fold(S::neg_infinity(), S::max);
    if max == S::neg_infinity() {
        return max;
    }
    if max == S::infinity() {
        return max;
    }
    let sum: S = xs.iter().map(|&x| (x - max).exp()).sum();
    max + sum.ln()
}

/// `1 / (1 + e^{-x})`, saturating cleanly at both ends.
#[inline]
pub fn logistic<S: Scalar>(x: S) -> S {
    if x >= S::zero() {
        S::one() / (S::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (S::one() + e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_add_exp_matches_naive() {
        let v = log_add_exp(1.0f64, 2.0);
        assert!((v - (1f64.exp() + 2f64.exp()).ln()).abs() < 1e-14);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 3.0), 3.0);
        assert!(log_add_exp(1000.0f64, 1000.0).is_finite());
    }

    #[test]
    fn logistic_saturates() {
        assert_eq!(logistic(0.0f64), 0.5);
        assert!(logistic(-800.0f64) >= 0.0);
        assert_eq!(logistic(800.0f64), 1.0);
        assert!((logistic(0.3f32) - 0.574_442_5).abs() < 1e-6);
    }

    #[test]
    fn log_sum_exp_of_empty_is_neg_inf() {
        assert_eq!(log_sum_exp::<f64>(&[]), f64::NEG_INFINITY);
        let v = log_sum_exp(&[0.0f64, 0.0, 0.0, 0.0]);
        assert!((v - 4f64.ln()).abs() < 1e-15);
    }
}
