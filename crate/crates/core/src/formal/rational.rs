//! Exact rational and Gaussian-rational scalars.
//!
//! `ExactRational` wraps `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator. `GaussRational` is the field Q(i); the
//! alternating real/imaginary pattern of the WKB coefficients lives here.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        ExactRational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::parse("zero denominator"));
        }
        Ok(ExactRational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        ExactRational(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `p` or `p/q` with an optional leading minus on `p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| Error::parse(format!("bad rational numerator `{n}`")))?;
        let d: BigInt = d.parse().map_err(|_| Error::parse(format!("bad rational denominator `{d}`")))?;
        if d.is_negative() {
            return Err(Error::parse(format!("negative denominator in `{s}`")));
        }
        ExactRational::from_big(n, d)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                ExactRational($tr::$m(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational($tr::$m(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: ExactRational,
    pub im: ExactRational,
}

impl GaussRational {
    pub fn new(re: ExactRational, im: ExactRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: ExactRational) -> Self {
        GaussRational { re, im: ExactRational::zero() }
    }

    pub fn imag(im: ExactRational) -> Self {
        GaussRational { re: ExactRational::zero(), im }
    }

    /// `p/q` on the real axis.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::real(ExactRational::new(p, q))
    }

    /// `(p/q) i`.
    pub fn i_ratio(p: i64, q: i64) -> Self {
        Self::imag(ExactRational::new(p, q))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(ExactRational::one())
    }

    pub fn i() -> Self {
        Self::imag(ExactRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> ExactRational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRational { re: &self.re / &n, im: &(-&self.im) / &n })
    }

    pub fn scale(&self, r: &ExactRational) -> Self {
        GaussRational { re: &self.re * r, im: &self.im * r }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        GaussRational::real(ExactRational::from_integer(n))
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &'a GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        &self + &rhs
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        *self = &*self + rhs;
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &'a GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &'a GaussRational) -> GaussRational {
        // Skip the cross terms when both sides are on an axis; that is the common case here.
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::real(&self.re * &rhs.re);
        }
        if self.re.is_zero() && rhs.re.is_zero() {
            return GaussRational::real(-(&self.im * &rhs.im));
        }
        if self.im.is_zero() && rhs.re.is_zero() {
            return GaussRational::imag(&self.re * &rhs.im);
        }
        if self.re.is_zero() && rhs.im.is_zero() {
            return GaussRational::imag(&self.im * &rhs.re);
        }
        GaussRational {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -&self
    }
}

impl fmt::Display for GaussRational {
    /// Canonical coefficient text: `3/8`, `-297/128 i`, `1/2 - 3/4 i`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{} i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {} i", self.re, self.im.abs())
                } else {
                    write!(f, "{} + {} i", self.re, self.im)
                }
            }
        }
    }
}

impl FromStr for GaussRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix(" i") {
            // Either `b i` or `a + b i` / `a - b i`. The real part never contains spaces.
            if let Some((re, rest)) = body.split_once(' ') {
                let rest = rest.trim_start();
                let (sign, mag) = if let Some(m) = rest.strip_prefix("+ ") {
                    (1, m)
                } else if let Some(m) = rest.strip_prefix("- ") {
                    (-1, m)
                } else {
                    return Err(Error::parse(format!("bad complex coefficient `{s}`")));
                };
                let mag: ExactRational = mag.parse()?;
                if mag.is_negative() {
                    return Err(Error::parse(format!("non-canonical sign in `{s}`")));
                }
                let im = if sign < 0 { -mag } else { mag };
                Ok(GaussRational::new(re.parse()?, im))
            } else {
                Ok(GaussRational::imag(body.parse()?))
            }
        } else {
            Ok(GaussRational::real(s.parse()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = ExactRational::new(6, -8);
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(ExactRational::new(0, 5), ExactRational::zero());
        assert_eq!(ExactRational::zero().to_string(), "0");
    }

    #[test]
    fn gauss_arithmetic() {
        let i = GaussRational::i();
        assert_eq!(&i * &i, GaussRational::from(-1));
        let z = GaussRational::new(ExactRational::new(1, 2), ExactRational::new(-3, 4));
        let inv = z.inverse().unwrap();
        assert_eq!(&z * &inv, GaussRational::one());
        assert!(GaussRational::zero().inverse().is_none());
    }

    #[test]
    fn coefficient_text_roundtrip() {
        for s in ["0", "3/8", "-297/128 i", "1/2 - 3/4 i", "-5 + 1 i", "7 i"] {
            let c: GaussRational = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("1/0".parse::<GaussRational>().is_err());
        assert!("1 + -2 i".parse::<GaussRational>().is_err());
    }
}
