//! Floating point scalar abstraction.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
pub use twofloat::TwoFloat;

/// Real scalar type the whole engine is generic over: `f32`, `f64`, or the double-double
/// [`TwoFloat`] used where double precision cannot resolve a cancellation.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal; panics only if the target cannot represent finite values.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("scalar literal")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Unit roundoff of the working precision.
    fn unit_roundoff() -> Self {
        Self::epsilon()
    }

    /// 1/x to the working precision.
    fn inv(self) -> Self {
        self.recip()
    }

    /// Parses a decimal literal.
    fn parse_lit(text: &str) -> Option<Self> {
        text.parse::<f64>().ok().map(Self::lit)
    }
}

impl Scalar for f32 {
    fn parse_lit(text: &str) -> Option<Self> {
        text.parse().ok()
    }
}

impl Scalar for f64 {
    fn parse_lit(text: &str) -> Option<Self> {
        text.parse().ok()
    }
}

impl Scalar for TwoFloat {
    // The `FromPrimitive` impl of `TwoFloat` routes floats through integers.
    fn lit(v: f64) -> Self {
        TwoFloat::from(v)
    }

    // Division in `TwoFloat` loses the low word; one Newton step on the f64 reciprocal restores it.
    fn inv(self) -> Self {
        let r = TwoFloat::from(self.hi().recip());
        let e = TwoFloat::from(1.0) - self * r;
        r + r * e
    }

    // `TwoFloat::epsilon` is the smallest positive value, not the roundoff.
    fn unit_roundoff() -> Self {
        TwoFloat::from(f64::EPSILON * f64::EPSILON)
    }
}

pub type Cx<T> = Complex<T>;

#[inline]
pub fn re<T: Scalar>(v: T) -> Cx<T> {
    Complex::new(v, T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_float_literals_and_reciprocals() {
        let h = TwoFloat::lit(0.3);
        assert_eq!(h.hi(), 0.3);
        let r = TwoFloat::lit(0.3).inv();
        assert!((r * h - TwoFloat::from(1.0)).abs() < TwoFloat::from(1e-31));
        assert!(TwoFloat::unit_roundoff() < TwoFloat::from(1e-31));
        assert_eq!(TwoFloat::parse_lit("0.25").map(|v| v.hi()), Some(0.25));
        assert_eq!(f32::parse_lit("0.1"), Some(0.1f32));
    }
}
