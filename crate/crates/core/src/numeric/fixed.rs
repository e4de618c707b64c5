//! Binary floating real with an explicit, per-value precision.
//!
//! A [`FixedReal`] is `mantissa * 2^exponent` where the mantissa carries at
//! most `prec` significant bits. Every arithmetic operation computes the
//! exact result (or an exact quotient plus a sticky remainder flag) and then
//! rounds once, so a single ring operation has relative error at most
//! `2^(1 - prec)`. Directed rounding modes make the type usable as the
//! endpoint type of [`Interval`](super::Interval).

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Rounding direction applied after an exact intermediate result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Round to nearest, ties to even.
    Nearest,
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Rounding {
    pub fn reverse(self) -> Self {
        match self {
            Rounding::Nearest => Rounding::Nearest,
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        }
    }
}

#[derive(Clone)]
pub struct FixedReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn bit_len(m: &BigUint) -> i64 {
    m.bits() as i64
}

/// Rounds `(-1)^neg * (mag + frac) * 2^exp` to `prec` bits, where `frac` is
/// zero when `sticky` is false and strictly inside (0, 1) otherwise.
fn round_parts(neg: bool, mut mag: BigUint, mut exp: i64, sticky: bool, prec: u32, mode: Rounding) -> FixedReal {
    if mag.is_zero() && !sticky {
        return FixedReal::zero(prec);
    }
    let prec_i = prec as i64;
    let mut n = bit_len(&mag);
    if n <= prec_i {
        if !sticky {
            return FixedReal::from_parts(neg, mag, exp, prec);
        }
        // push the sticky fraction strictly below the kept bits
        let lift = (prec_i + 2 - n) as usize;
        mag <<= lift;
        exp -= lift as i64;
        n = bit_len(&mag);
    }
    let shift = (n - prec_i) as u64;
    let mut kept = &mag >> shift;
    let rem = &mag - (&kept << shift);
    let inexact = sticky || !rem.is_zero();
    let bump = match mode {
        Rounding::Nearest => {
            let half = BigUint::one() << (shift - 1);
            match rem.cmp(&half) {
                Ordering::Greater => true,
                Ordering::Equal => sticky || kept.is_odd(),
                Ordering::Less => false,
            }
        }
        Rounding::Up => inexact && !neg,
        Rounding::Down => inexact && neg,
    };
    if bump {
        kept += 1u32;
    }
    FixedReal::from_parts(neg, kept, exp + shift as i64, prec)
}

impl FixedReal {
    pub fn zero(prec: u32) -> Self {
        FixedReal {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    fn from_parts(neg: bool, mut mag: BigUint, mut exp: i64, prec: u32) -> Self {
        if mag.is_zero() {
            return Self::zero(prec);
        }
        let tz = mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mag >>= tz;
            exp += tz as i64;
        }
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        FixedReal {
            mant: BigInt::from_biguint(sign, mag),
            exp,
            prec,
        }
    }

    /// Exact value `mant * 2^exp`, rounded to `prec` bits if necessary.
    pub fn from_mant_exp(mant: BigInt, exp: i64, prec: u32) -> Self {
        let (sign, mag) = mant.into_parts();
        round_parts(sign == Sign::Minus, mag, exp, false, prec, Rounding::Nearest)
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Self::from_mant_exp(v.into(), 0, prec)
    }

    pub fn from_ratio(q: &BigRational, prec: u32, mode: Rounding) -> Self {
        Self::quotient(q.numer(), q.denom(), prec, mode)
    }

    /// `num / den` rounded to `prec` bits. `den` must be nonzero.
    pub fn quotient(num: &BigInt, den: &BigInt, prec: u32, mode: Rounding) -> Self {
        assert!(!den.is_zero(), "quotient by zero");
        let a = Self::from_parts(num.is_negative(), num.magnitude().clone(), 0, u32::MAX);
        let b = Self::from_parts(den.is_negative(), den.magnitude().clone(), 0, u32::MAX);
        a.div_round(&b, prec, mode).expect("nonzero denominator")
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Smallest `t` with `|self| < 2^t`; `None` for zero.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(bit_len(self.mant.magnitude()) + self.exp)
        }
    }

    /// Same value, re-tagged (and if needed rounded) to another precision.
    pub fn with_prec(&self, prec: u32, mode: Rounding) -> Self {
        let neg = self.is_negative();
        round_parts(neg, self.mant.magnitude().clone(), self.exp, false, prec, mode)
    }

    pub fn abs(&self) -> Self {
        FixedReal {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Multiplication by `2^k`; exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        FixedReal {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    pub fn add_round(&self, other: &Self, prec: u32, mode: Rounding) -> Self {
        if other.is_zero() {
            return self.with_prec(prec, mode);
        }
        if self.is_zero() {
            return other.with_prec(prec, mode);
        }
        let (big, small) = if self.top_bit() >= other.top_bit() {
            (self, other)
        } else {
            (other, self)
        };
        let floor = (big.top_bit().unwrap() - prec as i64 - 3).min(big.exp - 1);
        let small_owned;
        let small = if small.top_bit().unwrap() <= floor {
            // too small to do more than break ties; stand in a single bit
            let m = if small.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            small_owned = FixedReal {
                mant: m,
                exp: floor - 1,
                prec: 1,
            };
            &small_owned
        } else {
            small
        };
        let e = big.exp.min(small.exp);
        let sum = (&big.mant << (big.exp - e) as usize) + (&small.mant << (small.exp - e) as usize);
        let (sign, mag) = sum.into_parts();
        round_parts(sign == Sign::Minus, mag, e, false, prec, mode)
    }

    pub fn sub_round(&self, other: &Self, prec: u32, mode: Rounding) -> Self {
        self.add_round(&-other, prec, mode)
    }

    pub fn mul_round(&self, other: &Self, prec: u32, mode: Rounding) -> Self {
        let (sign, mag) = (&self.mant * &other.mant).into_parts();
        round_parts(sign == Sign::Minus, mag, self.exp + other.exp, false, prec, mode)
    }

    pub fn div_round(&self, other: &Self, prec: u32, mode: Rounding) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::singular("division by zero"));
        }
        if self.is_zero() {
            return Ok(Self::zero(prec));
        }
        let a = self.mant.magnitude();
        let b = other.mant.magnitude();
        let want = prec.min(u32::MAX - 4) as i64 + 2;
        let s = (want + bit_len(b) - bit_len(a)).max(0) + 1;
        let (q, r) = (a << s as usize).div_rem(b);
        let neg = self.is_negative() != other.is_negative();
        Ok(round_parts(neg, q, self.exp - other.exp - s, !r.is_zero(), prec, mode))
    }

    pub fn sqrt_round(&self, prec: u32, mode: Rounding) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::domain("square root of a negative number"));
        }
        if self.is_zero() {
            return Ok(Self::zero(prec));
        }
        let m = self.mant.magnitude();
        let want = 2 * (prec as i64 + 2);
        let mut s = (want - bit_len(m)).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let scaled = m << s as usize;
        let root = scaled.sqrt();
        let exact = &root * &root == scaled;
        Ok(round_parts(false, root, (self.exp - s) / 2, !exact, prec, mode))
    }

    pub fn recip_round(&self, prec: u32, mode: Rounding) -> Result<Self> {
        FixedReal::from_int(1, 1).div_round(self, prec, mode)
    }

    /// Division with the larger of the two operand precisions.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.div_round(other, self.prec.max(other.prec), Rounding::Nearest)
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.sqrt_round(self.prec, Rounding::Nearest)
    }

    pub fn recip(&self) -> Result<Self> {
        self.recip_round(self.prec, Rounding::Nearest)
    }

    /// Greatest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            self.mant.div_floor(&(BigInt::one() << (-self.exp) as usize))
        }
    }

    /// Exact rational value.
    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Compares `|self|` against `10^j` exactly.
    pub fn cmp_abs_pow10(&self, j: i64) -> Ordering {
        if self.is_zero() {
            return Ordering::Less;
        }
        let mut lhs = self.mant.magnitude().clone();
        let mut rhs = BigUint::one();
        let ten = BigUint::from(10u32);
        if j >= 0 {
            rhs = num_traits::pow(ten, j as usize);
        } else {
            lhs *= num_traits::pow(ten, (-j) as usize);
        }
        if self.exp >= 0 {
            lhs <<= self.exp as usize;
        } else {
            rhs <<= (-self.exp) as usize;
        }
        lhs.cmp(&rhs)
    }

    /// For nonzero values, the `e` with `10^(e-1) <= |self| < 10^e`.
    pub fn decimal_exponent(&self) -> Option<i64> {
        let top = self.top_bit()?;
        // log10(2) ~ 30103/100000; the estimate is within one of the truth
        let mut e = ((top - 1) * 30103).div_euclid(100_000) + 1;
        while self.cmp_abs_pow10(e - 1) == Ordering::Less {
            e -= 1;
        }
        while self.cmp_abs_pow10(e) != Ordering::Less {
            e += 1;
        }
        Some(e)
    }

    /// Truncated decimal rendering with `places` digits after the point.
    pub fn to_decimal_string(&self, places: usize) -> String {
        let scaled = self.abs().to_ratio() * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
        let digits = scaled.floor().to_integer().to_str_radix(10);
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        if places == 0 {
            out.push_str(&digits);
            return out;
        }
        let padded: String = if digits.len() <= places {
            let mut s: String = core::iter::repeat_n('0', places + 1 - digits.len()).collect();
            s.push_str(&digits);
            s
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - places);
        out.push_str(int);
        out.push('.');
        out.push_str(frac);
        out
    }

    /// Nearest `f64`, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.with_prec(53, Rounding::Nearest);
        let m = r.mant.magnitude();
        let mut v = 0.0f64;
        for d in m.to_u64_digits().iter().rev() {
            v = v * 18446744073709551616.0 + *d as f64;
        }
        let mut e = r.exp;
        while e > 0 {
            let step = e.min(1000);
            v *= pow2_f64(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(1000);
            v /= pow2_f64(step as i32);
            e += step;
        }
        if r.is_negative() {
            -v
        } else {
            v
        }
    }
}

fn pow2_f64(k: i32) -> f64 {
    if k > 1023 {
        return f64::INFINITY;
    }
    f64::from_bits(((k + 1023) as u64) << 52)
}

impl PartialEq for FixedReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FixedReal {}

impl PartialOrd for FixedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mant.sign(), other.mant.sign());
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl fmt::Debug for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FixedReal({} * 2^{}, prec {})", self.mant, self.exp, self.prec)
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // decimal places matching the binary precision
        let places = (self.prec as u64 * 30103 / 100_000) as usize;
        let places = f.precision().unwrap_or(places);
        f.write_str(&self.to_decimal_string(places))
    }
}

impl Neg for FixedReal {
    type Output = FixedReal;
    fn neg(self) -> FixedReal {
        FixedReal {
            mant: -self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for &FixedReal {
    type Output = FixedReal;
    fn neg(self) -> FixedReal {
        -self.clone()
    }
}

macro_rules! ring_op {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&FixedReal> for &FixedReal {
            type Output = FixedReal;
            fn $method(self, rhs: &FixedReal) -> FixedReal {
                self.$imp(rhs, self.prec.max(rhs.prec), Rounding::Nearest)
            }
        }
        impl $tr<FixedReal> for FixedReal {
            type Output = FixedReal;
            fn $method(self, rhs: FixedReal) -> FixedReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FixedReal> for FixedReal {
            type Output = FixedReal;
            fn $method(self, rhs: &FixedReal) -> FixedReal {
                (&self).$method(rhs)
            }
        }
    };
}

ring_op!(Add, add, add_round);
ring_op!(Sub, sub, sub_round);
ring_op!(Mul, mul, mul_round);

/// Panics on a zero divisor; use [`FixedReal::checked_div`] when the
/// divisor is not known to be nonzero.
impl Div<&FixedReal> for &FixedReal {
    type Output = FixedReal;
    fn div(self, rhs: &FixedReal) -> FixedReal {
        self.checked_div(rhs).expect("FixedReal division by zero")
    }
}

impl Div<FixedReal> for FixedReal {
    type Output = FixedReal;
    fn div(self, rhs: FixedReal) -> FixedReal {
        &self / &rhs
    }
}

/// Truncated (never rounded) leading fractional binary digits of `x`.
///
/// Precondition `0 < x < 1` is checked by the caller-facing wrappers.
pub(crate) fn fraction_bits(x: &FixedReal, m: usize) -> Vec<u8> {
    let scaled = x.mul_pow2(m as i64).floor();
    let mag = scaled.magnitude();
    (0..m).map(|i| u8::from(mag.bit((m - 1 - i) as u64))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(v: i64) -> FixedReal {
        FixedReal::from_int(v, 64)
    }

    #[test]
    fn rounding_modes_bracket_one_third() {
        let third_dn = FixedReal::quotient(&1.into(), &3.into(), 40, Rounding::Down);
        let third_up = FixedReal::quotient(&1.into(), &3.into(), 40, Rounding::Up);
        let third = BigRational::new(1.into(), 3.into());
        assert!(third_dn.to_ratio() < third && third < third_up.to_ratio());
        let gap = third_up.to_ratio() - third_dn.to_ratio();
        assert_eq!(gap, BigRational::new(1.into(), BigInt::one() << 41usize));
    }

    #[test]
    fn negative_directed_rounding() {
        let v = FixedReal::quotient(&(-1).into(), &3.into(), 20, Rounding::Down);
        assert!(v.to_ratio() < BigRational::new((-1).into(), 3.into()));
        let v = FixedReal::quotient(&(-1).into(), &3.into(), 20, Rounding::Up);
        assert!(v.to_ratio() > BigRational::new((-1).into(), 3.into()));
    }

    #[test]
    fn nearest_ties_to_even() {
        // 0b1011 at 3 bits is a tie between 0b101_ and 0b110_
        let v = FixedReal::from_int(11, 64).with_prec(3, Rounding::Nearest);
        assert_eq!(v, fr(12));
        let v = FixedReal::from_int(9, 64).with_prec(3, Rounding::Nearest);
        assert_eq!(v, fr(8));
    }

    #[test]
    fn tiny_addend_still_breaks_direction() {
        let one = fr(1);
        let tiny = fr(1).mul_pow2(-10_000);
        assert_eq!(one.add_round(&tiny, 32, Rounding::Nearest), one);
        assert!(one.add_round(&tiny, 32, Rounding::Up) > one);
        assert!(one.sub_round(&tiny, 32, Rounding::Down) < one);
        assert_eq!(one.sub_round(&tiny, 32, Rounding::Up), one);
    }

    #[test]
    fn floor_toward_negative_infinity() {
        let v = FixedReal::quotient(&(-5).into(), &2.into(), 32, Rounding::Nearest);
        assert_eq!(v.floor(), BigInt::from(-3));
        let v = FixedReal::quotient(&5.into(), &2.into(), 32, Rounding::Nearest);
        assert_eq!(v.floor(), BigInt::from(2));
    }

    #[test]
    fn decimal_exponent_boundaries() {
        let ten_thousandth = FixedReal::quotient(&1.into(), &10000.into(), 200, Rounding::Nearest);
        // 1e-4 is not dyadic; the rounded value sits within an ulp of it
        let e = ten_thousandth.decimal_exponent().unwrap();
        assert!(e == -3 || e == -4);
        assert_eq!(fr(1).decimal_exponent(), Some(1));
        assert_eq!(fr(9).decimal_exponent(), Some(1));
        assert_eq!(fr(10).decimal_exponent(), Some(2));
        assert_eq!(fr(-99).decimal_exponent(), Some(2));
    }

    #[test]
    fn decimal_string_truncates() {
        let v = FixedReal::quotient(&2.into(), &3.into(), 64, Rounding::Nearest);
        assert_eq!(v.to_decimal_string(5), "0.66666");
        let v = FixedReal::quotient(&(-7).into(), &2.into(), 64, Rounding::Nearest);
        assert_eq!(v.to_decimal_string(2), "-3.50");
    }

    #[test]
    fn sqrt_exact_and_inexact() {
        assert_eq!(fr(4).sqrt().unwrap(), fr(2));
        assert!(fr(0).sqrt().unwrap().is_zero());
        assert!(fr(-1).sqrt().is_err());
        let lo = fr(2).sqrt_round(100, Rounding::Down).unwrap();
        let hi = fr(2).sqrt_round(100, Rounding::Up).unwrap();
        assert!(&lo * &lo < fr(2) || (lo.mul_round(&lo, 400, Rounding::Nearest) < fr(2)));
        assert!(hi.mul_round(&hi, 400, Rounding::Nearest) > fr(2));
    }

    #[test]
    fn binary_fraction_truncates() {
        let v = FixedReal::quotient(&3.into(), &8.into(), 32, Rounding::Nearest);
        assert_eq!(fraction_bits(&v, 3), alloc::vec![0, 1, 1]);
        let v = FixedReal::quotient(&1.into(), &2.into(), 32, Rounding::Nearest);
        assert_eq!(fraction_bits(&v, 3), alloc::vec![1, 0, 0]);
        // 0.1111..1 (40 ones) must not round up to 1.0
        let v = FixedReal::from_mant_exp((BigInt::one() << 40usize) - 1, -40, 64);
        assert_eq!(fraction_bits(&v, 4), alloc::vec![1, 1, 1, 1]);
    }

    #[test]
    fn to_f64_roundtrip() {
        let v = FixedReal::quotient(&355.into(), &113.into(), 128, Rounding::Nearest);
        assert!((v.to_f64() - 355.0 / 113.0).abs() < 1e-15);
        assert_eq!(fr(-3).mul_pow2(-2).to_f64(), -0.75);
    }
}
