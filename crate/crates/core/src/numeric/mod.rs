//! Exact integer/rational arithmetic and precision-tagged binary reals.

mod fixed;
mod gaussian;
mod interval;
mod precision;

use alloc::vec::Vec;

pub(crate) use fixed::fraction_bits as fixed_fraction_bits;
pub use fixed::{FixedReal, Rounding};
pub use gaussian::GaussianRational;
pub use interval::Interval;
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
pub use precision::{PrecisionContext, DEFAULT_GUARD_BITS, MIN_BITS};

use crate::error::{Error, Result};

/// Square root at context precision.
pub fn sqrt_fixed(x: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    x.sqrt_round(ctx.working(), Rounding::Nearest)
}

/// The first `m` fractional binary digits of `x`, truncated.
pub fn to_binary_fraction(x: &FixedReal, m: usize, ctx: &PrecisionContext) -> Result<Vec<u8>> {
    if !x.is_positive() || x >= &FixedReal::from_int(1, 1) {
        return Err(Error::domain("binary fraction needs 0 < x < 1"));
    }
    if (ctx.bits() as usize) < m {
        return Err(Error::precision(
            "binary fraction longer than context precision",
            m as u64,
            ctx.bits() as u64,
        ));
    }
    Ok(fixed::fraction_bits(x, m))
}

/// Greatest integer not above `q`.
pub fn floor_rational(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// Decimal digit count of `|n|` (zero has one digit).
pub fn digit_count(n: &BigInt) -> usize {
    n.magnitude().to_str_radix(10).len()
}

pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}
