//! Closed intervals with outward-rounded [`FixedReal`] endpoints.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::fixed::{FixedReal, Rounding};
use crate::error::{Error, Result};

/// `[lo, hi]` guaranteed to contain the exact value it stands for.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: FixedReal,
    hi: FixedReal,
}

impl Interval {
    pub fn new(lo: FixedReal, hi: FixedReal) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: FixedReal) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        let v = v.into();
        Interval {
            lo: FixedReal::from_int(v.clone(), prec).with_prec(prec, Rounding::Down),
            hi: FixedReal::from_int(v, prec).with_prec(prec, Rounding::Up),
        }
    }

    pub fn from_ratio(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: FixedReal::from_ratio(q, prec, Rounding::Down),
            hi: FixedReal::from_ratio(q, prec, Rounding::Up),
        }
    }

    /// `[x - r, x + r]` for a radius `r >= 0`.
    pub fn around(x: &FixedReal, radius: &FixedReal, prec: u32) -> Self {
        Interval {
            lo: x.sub_round(radius, prec, Rounding::Down),
            hi: x.add_round(radius, prec, Rounding::Up),
        }
    }

    pub fn lo(&self) -> &FixedReal {
        &self.lo
    }

    pub fn hi(&self) -> &FixedReal {
        &self.hi
    }

    pub fn width(&self) -> FixedReal {
        let prec = self.lo.prec().max(self.hi.prec());
        self.hi.sub_round(&self.lo, prec, Rounding::Up)
    }

    pub fn midpoint(&self) -> FixedReal {
        let prec = self.lo.prec().max(self.hi.prec());
        self.lo.add_round(&self.hi, prec, Rounding::Nearest).mul_pow2(-1)
    }

    pub fn contains(&self, x: &FixedReal) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: core::cmp::min(&self.lo, &other.lo).clone(),
            hi: core::cmp::max(&self.hi, &other.hi).clone(),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.add_round(&other.lo, prec, Rounding::Down),
            hi: self.hi.add_round(&other.hi, prec, Rounding::Up),
        }
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.sub_round(&other.hi, prec, Rounding::Down),
            hi: self.hi.sub_round(&other.lo, prec, Rounding::Up),
        }
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| a.mul_round(b, prec, Rounding::Down))
            .min()
            .unwrap();
        let hi = pairs
            .iter()
            .map(|(a, b)| a.mul_round(b, prec, Rounding::Up))
            .max()
            .unwrap();
        Interval { lo, hi }
    }

    pub fn square(&self, prec: u32) -> Interval {
        if self.contains_zero() {
            let a = self.lo.mul_round(&self.lo, prec, Rounding::Up);
            let b = self.hi.mul_round(&self.hi, prec, Rounding::Up);
            Interval {
                lo: FixedReal::zero(prec),
                hi: core::cmp::max(a, b),
            }
        } else {
            let (near, far) = if self.lo.is_positive() {
                (&self.lo, &self.hi)
            } else {
                (&self.hi, &self.lo)
            };
            Interval {
                lo: near.mul_round(near, prec, Rounding::Down),
                hi: far.mul_round(far, prec, Rounding::Up),
            }
        }
    }

    pub fn recip(&self, prec: u32) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::singular("reciprocal of an interval containing zero"));
        }
        Ok(Interval {
            lo: self.hi.recip_round(prec, Rounding::Down)?,
            hi: self.lo.recip_round(prec, Rounding::Up)?,
        })
    }

    pub fn div(&self, other: &Interval, prec: u32) -> Result<Interval> {
        if other.contains_zero() {
            return Err(Error::singular("division by an interval containing zero"));
        }
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<FixedReal> = None;
        let mut hi: Option<FixedReal> = None;
        for (a, b) in pairs {
            let d = a.div_round(b, prec, Rounding::Down)?;
            let u = a.div_round(b, prec, Rounding::Up)?;
            lo = Some(match lo {
                Some(l) if l <= d => l,
                _ => d,
            });
            hi = Some(match hi {
                Some(h) if h >= u => h,
                _ => u,
            });
        }
        Ok(Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        })
    }

    pub fn sqrt(&self, prec: u32) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(Error::domain("square root of an interval reaching below zero"));
        }
        Ok(Interval {
            lo: self.lo.sqrt_round(prec, Rounding::Down)?,
            hi: self.hi.sqrt_round(prec, Rounding::Up)?,
        })
    }

    /// The floor, if it is the same integer across the whole interval.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let a = self.lo.floor();
        let b = self.hi.floor();
        (a == b).then_some(a)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_is_enclosed() {
        let two = Interval::from_int(2, 64);
        let r = two.sqrt(128).unwrap();
        let sq = r.square(512);
        assert!(sq.contains(&FixedReal::from_int(2, 64)));
        assert!(r.width().top_bit().unwrap() <= -126);
    }

    #[test]
    fn division_by_straddling_interval_fails() {
        let a = Interval::from_int(1, 32);
        let b = Interval::new(FixedReal::from_int(-1, 32), FixedReal::from_int(1, 32));
        assert!(a.div(&b, 32).is_err());
        assert!(b.recip(32).is_err());
    }

    #[test]
    fn certified_floor_detects_straddle() {
        let x = Interval::new(FixedReal::from_int(3, 32), FixedReal::from_int(4, 32));
        assert_eq!(x.certified_floor(), None);
        let third = Interval::from_ratio(&BigRational::new(7.into(), 3.into()), 64);
        assert_eq!(third.certified_floor(), Some(BigInt::from(2)));
    }
}
