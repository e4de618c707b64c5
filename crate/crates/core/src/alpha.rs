//! The binary digits of `1/pi` and the integers `alpha_k` they spell.
//!
//! Indexing: `s_k` is fractional binary digit `k + 1` of `1/pi` (digit 1 is
//! always 0 because `1/pi < 1/2`). With `alpha_0 = 0`,
//! `alpha_k = 2 alpha_(k-1) + s_k`, so `alpha_k` is odd exactly when
//! `s_k = 1`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{fixed_fraction_bits, FixedReal, Interval, PrecisionContext, Rounding};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitOrigin {
    FromPiApprox,
    FromReferencePi,
}

/// `s_1 .. s_n`; `get(1)` is `s_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSeq {
    bits: Vec<u8>,
    origin: BitOrigin,
}

impl BitSeq {
    pub fn new(bits: Vec<u8>, origin: BitOrigin) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::domain("bit sequence entries must be 0 or 1"));
        }
        Ok(BitSeq { bits, origin })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn origin(&self) -> BitOrigin {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `s_k`, one-based.
    pub fn get(&self, k: usize) -> Option<u8> {
        k.checked_sub(1).and_then(|i| self.bits.get(i).copied())
    }

    pub fn prefix(&self, k: usize) -> BitSeq {
        BitSeq {
            bits: self.bits[..k.min(self.bits.len())].to_vec(),
            origin: self.origin,
        }
    }
}

/// `alpha_1 .. alpha_n`; `get(1)` is `alpha_1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlphaSeq {
    alphas: Vec<BigInt>,
}

impl AlphaSeq {
    pub fn new() -> Self {
        Self::default()
    }

    /// A sequence whose last entry is `alpha_k = value` (entries below `k`
    /// are recovered by halving).
    pub fn from_seed(k: usize, value: BigInt) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("seed index must be at least 1"));
        }
        let mut alphas = alloc::vec![BigInt::zero(); k];
        let mut v = value;
        for i in (0..k).rev() {
            alphas[i] = v.clone();
            v = v.div_floor(&BigInt::from(2));
        }
        if !v.is_zero() {
            return Err(Error::domain("seed alpha_k must be below 2^k"));
        }
        Ok(AlphaSeq { alphas })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&BigInt> {
        k.checked_sub(1).and_then(|i| self.alphas.get(i))
    }

    pub fn last(&self) -> Option<&BigInt> {
        self.alphas.last()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.alphas
    }

    /// Appends `alpha_(n+1) = 2 alpha_n + s`.
    pub fn push_bit(&mut self, s: u8) {
        let prev = self.alphas.last().cloned().unwrap_or_default();
        self.alphas.push(prev * 2 + BigInt::from(s));
    }

    /// Parities `alpha_k mod 2`, i.e. the bits `s_k`.
    pub fn parities(&self) -> Vec<u8> {
        self.alphas.iter().map(|a| u8::from(a.is_odd())).collect()
    }
}

pub fn alpha_from_bits(bits: &BitSeq) -> Result<AlphaSeq> {
    if bits.is_empty() {
        return Err(Error::domain("need at least one bit"));
    }
    let mut seq = AlphaSeq::new();
    for &b in bits.bits() {
        seq.push_bit(b);
    }
    Ok(seq)
}

/// `s_1 .. s_k0` from an enclosure that contains both the approximation
/// and the true value of pi.
///
/// Every extracted bit must be identical across the whole enclosure;
/// otherwise the call fails instead of guessing.
pub fn bits_from_pi_approx(enclosure: &Interval, k0: usize) -> Result<BitSeq> {
    bits_from_enclosure(enclosure, k0, BitOrigin::FromPiApprox)
}

pub(crate) fn bits_from_enclosure(enclosure: &Interval, k0: usize, origin: BitOrigin) -> Result<BitSeq> {
    let three = FixedReal::from_int(3, 8);
    let four = FixedReal::from_int(4, 8);
    if enclosure.lo() <= &three || enclosure.hi() >= &four {
        return Err(Error::domain("pi enclosure must lie inside (3, 4)"));
    }
    let prec = enclosure.lo().prec().max(enclosure.hi().prec()).max(k0 as u32 + 64);
    let recip_lo = enclosure.hi().recip_round(prec, Rounding::Down)?;
    let recip_hi = enclosure.lo().recip_round(prec, Rounding::Up)?;
    let lo_bits = fixed_fraction_bits(&recip_lo, k0 + 1);
    let hi_bits = fixed_fraction_bits(&recip_hi, k0 + 1);
    if let Some(pos) = lo_bits.iter().zip(&hi_bits).position(|(a, b)| a != b) {
        return Err(Error::precision(
            alloc::format!("bit s_{} of 1/pi is not certified by the enclosure", pos.max(1)),
            k0 as u64 + 1,
            pos as u64,
        ));
    }
    BitSeq::new(lo_bits[1..].to_vec(), origin)
}

/// `s_1 .. s_k0` read from `1 / approx` with no accuracy check at all.
///
/// This is the naive extraction; it can and does return wrong trailing
/// bits when `approx` is not accurate enough.
pub fn bits_from_pi_point(approx: &FixedReal, k0: usize, ctx: &PrecisionContext) -> Result<BitSeq> {
    let prec = ctx.working().max(k0 as u32 + 64);
    let recip = approx.recip_round(prec, Rounding::Down)?;
    let half = FixedReal::from_int(1, 8).mul_pow2(-1);
    if !recip.is_positive() || recip >= half {
        return Err(Error::domain("1/approx must lie in (0, 1/2)"));
    }
    let bits = fixed_fraction_bits(&recip, k0 + 1);
    BitSeq::new(bits[1..].to_vec(), BitOrigin::FromPiApprox)
}

/// `"0.0"` followed by `alpha_n mod 2` for `n = 1..=count`: the binary
/// expansion of `1/pi` read off the parities.
pub fn binary_recip_pi_from_parity(alphas: &AlphaSeq, count: usize) -> Result<String> {
    if alphas.len() < count {
        return Err(Error::domain(alloc::format!(
            "need {count} alpha values, have {}",
            alphas.len()
        )));
    }
    let mut out = String::from("0.0");
    for a in &alphas.as_slice()[..count] {
        out.push(if a.is_odd() { '1' } else { '0' });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bits(v: &[u8]) -> BitSeq {
        BitSeq::new(v.to_vec(), BitOrigin::FromReferencePi).unwrap()
    }

    #[test]
    fn doubling_rule_examples() {
        let a = alpha_from_bits(&bits(&[1])).unwrap();
        assert_eq!(a.get(1), Some(&BigInt::from(1)));
        let a = alpha_from_bits(&bits(&[1, 0, 1, 0, 0, 0, 1])).unwrap();
        let expect: Vec<BigInt> = [1, 2, 5, 10, 20, 40, 81].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(a.as_slice(), &expect[..]);
        assert!(alpha_from_bits(&bits(&[])).is_err());
        assert!(BitSeq::new(vec![0, 2], BitOrigin::FromPiApprox).is_err());
    }

    #[test]
    fn parity_string() {
        let a = alpha_from_bits(&bits(&[1, 0, 1, 0, 0, 0, 1, 0, 1, 1])).unwrap();
        assert_eq!(binary_recip_pi_from_parity(&a, 10).unwrap(), "0.01010001011");
        assert!(binary_recip_pi_from_parity(&a, 11).is_err());
        // alpha_4..alpha_6 = 10, 20, 40 are even and contribute zeros
        assert_eq!(&binary_recip_pi_from_parity(&a, 7).unwrap()[6..], "0001");
    }

    #[test]
    fn seed_recovers_prefix() {
        let s = AlphaSeq::from_seed(7, BigInt::from(81)).unwrap();
        assert_eq!(s.parities(), vec![1, 0, 1, 0, 0, 0, 1]);
        assert!(AlphaSeq::from_seed(3, BigInt::from(8)).is_err());
    }
}
