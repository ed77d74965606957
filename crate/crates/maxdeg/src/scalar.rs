//! Coefficient field for every series: exact rationals or `f64`.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssignRef, NumRef, One, ToPrimitive, Zero};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Arithmetic required of series coefficients.
///
/// Two implementations exist: [`Rational`] (lossless) and `f64`.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Send + Sync + NumAssignRef + NumRef + Neg<Output = Self> + 'static
{
    /// `true` for lossless arithmetic.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn from_bigint(v: &BigInt) -> Self;

    fn to_f64(&self) -> f64;

    /// Converts an `f64`; exact mode takes the binary value of `v` exactly.
    fn from_f64(v: f64) -> Self;

    /// `self += a * b`.
    fn mul_acc(&mut self, a: &Self, b: &Self);

    fn is_negative(&self) -> bool;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_bigint(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }

    fn to_f64(&self) -> f64 {
        if let Some(v) = ToPrimitive::to_f64(self) {
            if v.is_finite() {
                return v;
            }
        }
        // Fallback for very large numerators and denominators.
        let shift = (self.numer().bits() as i64 - self.denom().bits() as i64) - 60;
        let scaled = if shift > 0 {
            self / Rational::from_integer(BigInt::one() << shift as usize)
        } else {
            self * Rational::from_integer(BigInt::one() << (-shift) as usize)
        };
        let m = ToPrimitive::to_f64(&scaled).unwrap_or(f64::NAN);
        m * 2f64.powi(shift as i32)
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).expect("finite value")
    }

    fn mul_acc(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let mut t = a.clone();
        t *= b;
        *self += &t;
    }

    fn is_negative(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    #[inline]
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

/// `n!` as a scalar.
pub fn factorial<T: Scalar>(n: usize) -> T {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    T::from_bigint(&acc)
}

/// `n!` as an integer.
pub fn factorial_int(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Exact conversion of a rational known to be an integer.
pub fn rational_to_integer(r: &Rational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let r = Rational::from_ratio(2, 3);
        assert!((Scalar::to_f64(&r) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(Rational::from_f64(0.5), Rational::from_ratio(1, 2));
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = factorial_int(300);
        let r = Rational::new(big.clone() * 3, big * 2);
        assert!((Scalar::to_f64(&r) - 1.5).abs() < 1e-15);
        let small = Rational::new(factorial_int(300), factorial_int(301));
        assert!((Scalar::to_f64(&small) * 301.0 - 1.0).abs() < 1e-14);
        let tiny = Rational::new(BigInt::one(), factorial_int(160));
        let expect = (-(1..=160).map(|i| (i as f64).ln()).sum::<f64>()).exp();
        assert!((Scalar::to_f64(&tiny) / expect - 1.0).abs() < 1e-10);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial::<Rational>(5), Rational::from_i64(120));
        assert_eq!(factorial::<f64>(0), 1.0);
    }
}
