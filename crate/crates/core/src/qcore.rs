//! q-dependent constants and special functions.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Recommended range for q; outside it the q^{-x} terms get badly conditioned.
pub const RECOMMENDED_Q: (f64, f64) = (0.05, 0.95);
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QParams<T> {
    q: T,
    lambda: T,
    tol: T,
}

impl<T: Scalar> QParams<T> {
    pub fn new(q: T) -> Result<Self> {
        if !(q > T::zero() && q < T::one()) {
            return Err(Error::InvalidParameter(format!("q must lie in (0, 1), got {q}")));
        }
        let qf = q.as_f64();
        if qf < RECOMMENDED_Q.0 || qf > RECOMMENDED_Q.1 {
            log::warn!("q = {qf} outside the recommended range [0.05, 0.95]");
        }
        Ok(Self { q, lambda: (q - q.inv()).inv(), tol: T::lit(DEFAULT_TOL) })
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn q(&self) -> T {
        self.q
    }

    /// λ = (q − q^{-1})^{-1}, always negative.
    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    /// q^n for integer n.
    pub fn pow(&self, n: i32) -> T {
        if n < 0 {
            self.q.powi(-n).inv()
        } else {
            self.q.powi(n)
        }
    }

    /// q^e for real e; integer and half-integer exponents go through `powi` and `sqrt`,
    /// which stay exact to the working precision for every scalar type.
    pub fn powf(&self, e: T) -> T {
        let two = e + e;
        if two.fract().is_zero() && two.abs() < T::lit(f64::from(i32::MAX)) {
            return self.pow_half(two.to_i32().unwrap_or(0));
        }
        self.q.powf(e)
    }

    /// q^{n/2}.
    pub fn pow_half(&self, n: i32) -> T {
        if n % 2 == 0 {
            self.pow(n / 2)
        } else {
            self.pow(n).sqrt()
        }
    }
}

/// τ(x) = q^{-x} − q^x; ±∞ at x = ±∞.
pub fn tau<T: Scalar>(p: &QParams<T>, x: T) -> T {
    if x.is_infinite() {
        return x;
    }
    p.powf(-x) - p.powf(x)
}

/// Length of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(usize),
    Infinite,
}

/// (a; b)_r = ∏_{k<r} (1 − b^k a). The infinite product stops once |b^k a| drops below epsilon.
pub fn q_pochhammer<T: Scalar>(a: Complex<T>, base: T, r: PochLen) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut acc = one;
    let mut bk = T::one();
    match r {
        PochLen::Finite(r) => {
            for _ in 0..r {
                acc *= one - a * bk;
                bk *= base;
            }
        }
        PochLen::Infinite => {
            // |base| < 1 is needed for convergence; cap guards against a stuck loop.
            for _ in 0..100_000 {
                let term = a * bk;
                if term.norm() < T::unit_roundoff() {
                    break;
                }
                acc *= one - term;
                bk *= base;
            }
        }
    }
    acc
}

/// Real finite (a; b)_r.
pub fn q_pochhammer_real<T: Scalar>(a: T, base: T, r: usize) -> T {
    let mut acc = T::one();
    let mut bk = T::one();
    for _ in 0..r {
        acc *= T::one() - a * bk;
        bk *= base;
    }
    acc
}

/// The two Casimir eigenvalues (τ(x−1), τ(x+1)), ascending.
pub fn casimir_eigenvalues<T: Scalar>(p: &QParams<T>, x: T) -> (T, T) {
    let lo = tau(p, x - T::one());
    let hi = tau(p, x + T::one());
    debug_assert!(lo < hi);
    (lo, hi)
}

/// A non-negative half-integer l, stored as 2l.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(u32);

impl HalfInt {
    pub fn from_twice(twice: u32) -> Self {
        Self(twice)
    }

    pub fn parse(l: f64) -> Result<Self> {
        let t = 2.0 * l;
        if !(t.is_finite() && t >= 0.0 && (t - t.round()).abs() < 1e-12) {
            return Err(Error::InvalidParameter(format!("l must be a non-negative half-integer, got {l}")));
        }
        Ok(Self(t.round() as u32))
    }

    /// 2l.
    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn up(self) -> Self {
        Self(self.0 + 1)
    }

    pub fn down(self) -> Option<Self> {
        self.0.checked_sub(1).map(Self)
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: f64) -> QParams<f64> {
        QParams::new(q).unwrap()
    }

    #[test]
    fn tau_values() {
        let p = p(0.5);
        assert_eq!(tau(&p, 0.0), 0.0);
        assert!((tau(&p, 1.0) - 1.5).abs() < 1e-15);
        assert!((tau(&p, -1.0) + 1.5).abs() < 1e-15);
        assert_eq!(tau(&p, f64::INFINITY), f64::INFINITY);
        assert_eq!(tau(&p, f64::NEG_INFINITY), f64::NEG_INFINITY);
    }

    #[test]
    fn lambda_is_negative() {
        let p = p(0.5);
        assert!(p.lambda() < 0.0);
        assert!((p.lambda() - 1.0 / (0.5 - 2.0)).abs() < 1e-16);
        assert!(QParams::new(1.0f64).is_err());
        assert!(QParams::new(0.0f64).is_err());
    }

    #[test]
    fn pochhammer_examples() {
        let one = q_pochhammer(Complex::new(7.0, 1.0), 0.3, PochLen::Finite(0));
        assert_eq!(one, Complex::new(1.0, 0.0));
        let v = q_pochhammer(Complex::new(0.5f64, 0.0), 0.25, PochLen::Finite(2));
        assert!((v.re - 0.4375).abs() < 1e-15);
        let z = q_pochhammer(Complex::new(1.0, 0.0), 0.25, PochLen::Finite(3));
        assert_eq!(z.norm(), 0.0);
        assert!((q_pochhammer_real(0.5f64, 0.25, 2) - 0.4375).abs() < 1e-15);
    }

    #[test]
    fn pochhammer_infinite_matches_long_product() {
        let a = Complex::new(0.3, 0.2);
        let inf = q_pochhammer(a, 0.5, PochLen::Infinite);
        let fin = q_pochhammer(a, 0.5, PochLen::Finite(80));
        assert!((inf - fin).norm() < 1e-14);
    }

    #[test]
    fn casimir_pairs() {
        let p = p(0.5);
        let (a, b) = casimir_eigenvalues(&p, 1.0);
        assert!(a.abs() < 1e-15 && (b - 3.75).abs() < 1e-14);
        let (a, b) = casimir_eigenvalues(&p, 0.0);
        assert!((a + 1.5).abs() < 1e-15 && (b - 1.5).abs() < 1e-15);
    }

    #[test]
    fn generic_over_f32() {
        let p = QParams::new(0.5f32).unwrap();
        assert!((tau(&p, 1.0f32) - 1.5).abs() < 1e-6);
        let (a, b) = casimir_eigenvalues(&p, 0.0f32);
        assert!((b - a - 3.0).abs() < 1e-5);
    }

    #[test]
    fn half_int() {
        assert_eq!(HalfInt::parse(1.5).unwrap().twice(), 3);
        assert!(HalfInt::parse(0.3).is_err());
        assert!(HalfInt::parse(-0.5).is_err());
        assert_eq!(HalfInt::from_twice(1).to_string(), "1/2");
        assert_eq!(HalfInt::from_twice(4).to_string(), "2");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn eigenvalue_order(q in 0.05f64..0.95, x in -6.0f64..6.0) {
                let p = QParams::new(q).unwrap();
                prop_assert!(tau(&p, x + 1.0) - tau(&p, x - 1.0) > 0.0);
            }

            #[test]
            fn pochhammer_recurrence(a in -2.0f64..2.0, b in 0.05f64..0.95, r in 0usize..20) {
                let lhs = q_pochhammer_real(a, b, r + 1);
                let rhs = q_pochhammer_real(a, b, r) * (1.0 - b.powi(r as i32) * a);
                prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
            }

            #[test]
            fn tau_decreasing_in_q(q in 0.05f64..0.9, dq in 0.001f64..0.05, x in 0.01f64..5.0) {
                let a = QParams::new(q).unwrap();
                let b = QParams::new(q + dq).unwrap();
                prop_assert!(tau(&a, x) > tau(&b, x));
            }
        }
    }
}
