//! Nested radicals `a_k = sqrt(2 + a_(k-1))`, `a_0 = 0`, and the coefficients
//! `alpha_k = floor(a_k / sqrt(2 - a_(k-1)))` computed straight from them.
//!
//! `2 - a_(k-1)` is about `(pi / 2^k)^2`, so roughly `2k` bits cancel. The
//! oracle insists on `bits >= 4k + 64` and evaluates everything in interval
//! arithmetic, so a returned `alpha_k` is certified rather than hoped for.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numeric::{FixedReal, Interval, PrecisionContext, Rounding};

/// `a_k` and `b_k = sqrt(2 - a_(k-1))` at one depth.
#[derive(Debug, Clone)]
pub struct NestedRadicalState {
    pub k: u64,
    pub a_k: FixedReal,
    pub b_k: FixedReal,
}

pub fn required_bits(k: u64) -> u64 {
    4 * k + 64
}

fn check_precision(k: u64, ctx: &PrecisionContext) -> Result<()> {
    let need = required_bits(k);
    if (ctx.bits() as u64) < need {
        return Err(Error::precision(
            alloc::format!("nested radical depth {k}"),
            need,
            ctx.bits() as u64,
        ));
    }
    Ok(())
}

/// Enclosures of `(a_(k-1), a_k)`.
fn radical_pair(k: u64, prec: u32) -> Result<(Interval, Interval)> {
    let two = Interval::from_int(2, prec);
    let mut prev = Interval::from_int(0, prec);
    let mut cur = Interval::from_int(0, prec);
    for _ in 0..k {
        prev = cur;
        cur = two.add(&prev, prec).sqrt(prec)?;
    }
    Ok((prev, cur))
}

pub fn nested_a(k: u64, ctx: &PrecisionContext) -> Result<FixedReal> {
    check_precision(k, ctx)?;
    let w = ctx.working();
    let two = FixedReal::from_int(2, w);
    let mut a = FixedReal::zero(w);
    for _ in 0..k {
        a = (&two + &a).sqrt_round(w, Rounding::Nearest)?;
    }
    Ok(a)
}

pub fn nested_state(k: u64, ctx: &PrecisionContext) -> Result<NestedRadicalState> {
    if k == 0 {
        return Err(Error::domain("b_k needs k >= 1"));
    }
    let prev = nested_a(k - 1, ctx)?;
    let w = ctx.working();
    let two = FixedReal::from_int(2, w);
    let a_k = (&two + &prev).sqrt_round(w, Rounding::Nearest)?;
    let b_k = (&two - &prev).sqrt_round(w, Rounding::Nearest)?;
    Ok(NestedRadicalState { k, a_k, b_k })
}

/// Enclosure of `a_k / sqrt(2 - a_(k-1))`.
pub fn radical_ratio(k: u64, ctx: &PrecisionContext) -> Result<Interval> {
    if k == 0 {
        return Err(Error::domain("alpha_k is defined for k >= 1"));
    }
    check_precision(k, ctx)?;
    let w = ctx.working();
    let (prev, cur) = radical_pair(k, w)?;
    let b = Interval::from_int(2, w).sub(&prev, w).sqrt(w)?;
    cur.div(&b, w)
}

/// `alpha_k` from the radicals, with the floor certified by the enclosure.
pub fn alpha_via_radicals(k: u64, ctx: &PrecisionContext) -> Result<BigInt> {
    let r = radical_ratio(k, ctx)?;
    if k == 1 {
        // sqrt 2 / sqrt 2: exactly 1, which no enclosure can certify a floor of
        return Ok(BigInt::from(1));
    }
    r.certified_floor().ok_or_else(|| {
        Error::precision(
            alloc::format!("floor of a_{k}/b_{k} is not certified"),
            ctx.bits() as u64 + 1,
            ctx.bits() as u64,
        )
    })
}

/// `2^k sqrt(2 - a_(k-1))`, which tends to pi.
pub fn srf_limit_check(k: u64, ctx: &PrecisionContext) -> Result<FixedReal> {
    if k < 2 {
        return Err(Error::domain("the radical limit is taken for k >= 2"));
    }
    let prev = nested_a(k - 1, ctx)?;
    let w = ctx.working();
    let b = (&FixedReal::from_int(2, w) - &prev).sqrt_round(w, Rounding::Nearest)?;
    Ok(b.mul_pow2(k as i64))
}
