//! Scalar abstraction for utilities and entropies: f32 or f64.
//!
//! All utility comparisons in this crate go through the helpers below,
//! which treat values within [`TIE_TOLERANCE`] of each other as tied.
//! Entropy values are irrational, so exact comparison is never meaningful.

use std::fmt;

use num_traits::{Float, FromPrimitive};

/// Comparison tolerance shared by every utility comparison in the crate.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Floating-point scalar for utilities, payoffs and entropies.
pub trait Scalar: Float + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// The tie tolerance expressed in this scalar type.
    fn tie_tolerance() -> Self {
        Self::from_f64(TIE_TOLERANCE).unwrap()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `a` and `b` are tied (equal up to tolerance).
pub fn approx_eq<R: Scalar>(a: R, b: R) -> bool {
    (a - b).abs() <= R::tie_tolerance()
}

/// `a` is strictly greater than `b`, beyond tolerance.
pub fn strictly_greater<R: Scalar>(a: R, b: R) -> bool {
    a - b > R::tie_tolerance()
}

/// `a` is at least `b`: greater, or tied within tolerance.
pub fn at_least<R: Scalar>(a: R, b: R) -> bool {
    !strictly_greater(b, a)
}

/// Strictly positive beyond tolerance (a tie with zero is not positive).
pub fn strictly_positive<R: Scalar>(a: R) -> bool {
    strictly_greater(a, R::zero())
}

pub(crate) fn half<R: Scalar>() -> R {
    R::from_f64(0.5).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_within_tolerance() {
        assert!(approx_eq(1.0_f64, 1.0 + 5e-10));
        assert!(!approx_eq(1.0_f64, 1.0 + 5e-9));
        assert!(strictly_greater(1.0 + 5e-9, 1.0_f64));
        assert!(!strictly_greater(1.0 + 5e-10, 1.0_f64));
        assert!(at_least(1.0_f64, 1.0 + 5e-10));
        assert!(!at_least(1.0_f64, 1.0 + 5e-9));
    }

    #[test]
    fn zero_is_not_positive() {
        assert!(!strictly_positive(0.0_f64));
        assert!(!strictly_positive(5e-10_f64));
        assert!(strictly_positive(1e-8_f64));
        assert!(!strictly_positive(-1.0_f64));
    }

    #[test]
    fn works_for_f32() {
        assert!(approx_eq(1.0_f32, 1.0_f32));
        assert!(strictly_greater(2.0_f32, 1.0_f32));
    }
}
