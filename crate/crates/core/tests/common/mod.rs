//! Oracles that share no code with the library: plain integer fixed point.
#![allow(dead_code)]

use machin_core::numeric::{BigInt, FixedReal};
use num_traits::{One, Zero};

/// `floor(2^bits / n)`-scaled `arctan(1/n)` by the alternating series.
fn arctan_inv(n: i64, bits: usize) -> BigInt {
    let one = BigInt::one() << bits;
    let n2 = BigInt::from(n * n);
    let mut power = &one / BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut j: i64 = 0;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * j + 1);
        if j % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &n2;
        j += 1;
    }
    sum
}

/// `pi * 2^bits` within a few units, from
/// `pi/4 = 44 arctan(1/57) + 7 arctan(1/239) - 12 arctan(1/682) + 24 arctan(1/12943)`.
pub fn pi_scaled(bits: usize) -> BigInt {
    let g = bits + 32;
    let s = arctan_inv(57, g) * 44 + arctan_inv(239, g) * 7 - arctan_inv(682, g) * 12 + arctan_inv(12943, g) * 24;
    (s * 4) >> 32usize
}

pub fn pi_fixed(bits: usize) -> FixedReal {
    FixedReal::from_mant_exp(pi_scaled(bits), -(bits as i64), bits as u32 + 8)
}

/// Fractional binary digits `1..=m` of `1/pi`.
pub fn recip_pi_bits(m: usize) -> Vec<u8> {
    let bits = m + 64;
    let q = (BigInt::one() << (2 * bits)) / pi_scaled(bits); // 2^bits / pi
    let s = q.to_str_radix(2);
    // 1/pi < 1/2 so the top of q sits at bit bits-2
    let pad = bits - s.len();
    let mut out = vec![0u8; pad];
    out.extend(s.bytes().map(|b| b - b'0'));
    out.truncate(m);
    out
}

/// `pi` truncated to `places` decimals.
pub fn pi_decimal(places: usize) -> String {
    let bits = places * 4 + 64;
    let scaled = (pi_scaled(bits) * num_traits::pow(BigInt::from(10), places)) >> bits;
    let s = scaled.to_string();
    format!("{}.{}", &s[..1], &s[1..])
}
