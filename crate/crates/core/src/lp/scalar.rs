use crate::Rational;
use num_traits::{Num, Signed, ToPrimitive};
use std::fmt::Debug;

/// Scalar field the dense simplex runs over.
///
/// Floating types compare against a tolerance; exact types use zero.
pub trait LpScalar: Clone + PartialOrd + Num + Signed + Debug {
    /// Magnitudes at or below this are treated as zero in pivoting decisions.
    fn tolerance() -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn as_f64(&self) -> f64;

    fn is_exact() -> bool;

    #[inline]
    fn is_positive_tol(&self) -> bool {
        *self > Self::tolerance()
    }
}

impl LpScalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }
}

impl LpScalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self as f64
    }

    fn is_exact() -> bool {
        false
    }
}

impl LpScalar for Rational {
    fn tolerance() -> Self {
        Rational::from_integer(0.into())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        true
    }
}
