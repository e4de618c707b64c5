use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact complex number with rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn square(&self) -> Self {
        GaussianRational {
            re: &self.re * &self.re - &self.im * &self.im,
            im: BigRational::from_integer(2.into()) * &self.re * &self.im,
        }
    }

    /// Division through the conjugate: `a / b = a * conj(b) / |b|^2`.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let n = other.norm_sqr();
        if n.is_zero() {
            return Err(Error::singular("complex division by zero"));
        }
        let p = self * &other.conj();
        Ok(GaussianRational {
            re: p.re / &n,
            im: p.im / n,
        })
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, e: &BigInt) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e.clone();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                result = &result * &base;
            }
            e /= &two;
            if !e.is_zero() {
                base = base.square();
            }
        }
        result
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}
