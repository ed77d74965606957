//! Real scalars for point evaluation: `f64`, multi-precision floats and
//! forward-mode dual numbers over either.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfAway;
use dashu_float::FBig;

/// Field operations plus the elementary functions needed by the constant solvers.
pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;

    /// Relative resolution of the representation.
    fn epsilon() -> f64;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Decimal rendering with roughly `digits` significant digits.
    fn to_decimal_string(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1).min(16), self.to_f64())
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn epsilon() -> f64 {
        f64::EPSILON
    }
}

/// Binary float with `BITS` bits of precision and round-half-away rounding.
#[derive(Clone, PartialEq)]
pub struct BigFloat<const BITS: usize>(FBig<HalfAway, 2>);

/// Default multi-precision type: 200 bits, about 60 decimal digits.
pub type Big = BigFloat<200>;

impl<const BITS: usize> BigFloat<BITS> {
    fn wrap(v: FBig<HalfAway, 2>) -> Self {
        BigFloat(v.with_precision(BITS).value())
    }

    pub fn inner(&self) -> &FBig<HalfAway, 2> {
        &self.0
    }
}

impl<const BITS: usize> Debug for BigFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(40))
    }
}

impl<const BITS: usize> Display for BigFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(30))
    }
}

impl<const BITS: usize> PartialOrd for BigFloat<BITS> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&o.0)
    }
}

macro_rules! big_binop {
    ($tr:ident, $f:ident) => {
        impl<const BITS: usize> $tr for BigFloat<BITS> {
            type Output = Self;
            fn $f(self, o: Self) -> Self {
                Self::wrap($tr::$f(self.0, o.0))
            }
        }
    };
}
big_binop!(Add, add);
big_binop!(Sub, sub);
big_binop!(Mul, mul);
big_binop!(Div, div);

impl<const BITS: usize> Neg for BigFloat<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        BigFloat(-self.0)
    }
}

impl<const BITS: usize> Real for BigFloat<BITS> {
    fn from_f64(v: f64) -> Self {
        Self::wrap(FBig::try_from(v).expect("finite value"))
    }
    fn from_i64(v: i64) -> Self {
        Self::wrap(FBig::from(v))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn exp(&self) -> Self {
        Self::wrap(self.0.exp())
    }
    fn ln(&self) -> Self {
        Self::wrap(self.0.ln())
    }
    fn sqrt(&self) -> Self {
        Self::wrap(self.0.sqrt())
    }
    fn epsilon() -> f64 {
        2f64.powi(-(BITS as i32))
    }
    fn to_decimal_string(&self, digits: usize) -> String {
        let d = self.0.to_decimal().value();
        let prec = (digits as f64 * 1.0) as usize;
        d.with_precision(prec).value().to_string()
    }
}

/// Forward-mode dual number `re + du * eps` with `eps^2 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<R> {
    pub re: R,
    pub du: R,
}

impl<R: Real> Dual<R> {
    pub fn new(re: R, du: R) -> Self {
        Dual { re, du }
    }

    /// The independent variable at `x`.
    pub fn var(x: R) -> Self {
        Dual { re: x, du: R::one() }
    }

    pub fn constant(x: R) -> Self {
        Dual { re: x, du: R::zero() }
    }
}

impl<R: Real> PartialOrd for Dual<R> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.re.partial_cmp(&o.re)
    }
}

impl<R: Real> Add for Dual<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.du + o.du)
    }
}

impl<R: Real> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.du - o.du)
    }
}

impl<R: Real> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let du = self.re.clone() * o.du + self.du * o.re.clone();
        Dual::new(self.re * o.re, du)
    }
}

impl<R: Real> Div for Dual<R> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let re = self.re / o.re.clone();
        let du = (self.du - re.clone() * o.du) / o.re;
        Dual::new(re, du)
    }
}

impl<R: Real> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.du)
    }
}

impl<R: Real> Real for Dual<R> {
    fn from_f64(v: f64) -> Self {
        Dual::constant(R::from_f64(v))
    }
    fn from_i64(v: i64) -> Self {
        Dual::constant(R::from_i64(v))
    }
    fn to_f64(&self) -> f64 {
        self.re.to_f64()
    }
    fn exp(&self) -> Self {
        let e = self.re.exp();
        Dual::new(e.clone(), e * self.du.clone())
    }
    fn ln(&self) -> Self {
        Dual::new(self.re.ln(), self.du.clone() / self.re.clone())
    }
    fn sqrt(&self) -> Self {
        let s = self.re.sqrt();
        let du = self.du.clone() / (R::from_i64(2) * s.clone());
        Dual::new(s, du)
    }
    fn epsilon() -> f64 {
        R::epsilon()
    }
}
