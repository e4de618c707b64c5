//! The digit-doubling driver.
//!
//! From `alpha_k` the two-term approximation
//! `pi ~ 4 (2^(k-1)/alpha_k + (1 - eta_(k-1)(1/alpha_k)) / 2)` is accurate to
//! roughly `2k` bits, which yields `s_(k+1) .. s_k0` with
//! `k0 = floor(63 k / 32)` and hence `alpha_k0`. Every extracted bit is
//! certified before it is used.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::alpha::{self, AlphaSeq, BitOrigin, BitSeq};
use crate::error::{Error, Result};
use crate::numeric::{FixedReal, Interval, PrecisionContext, Rounding, DEFAULT_GUARD_BITS};
use crate::trig;

pub const DEFAULT_K0_DIVISOR: u64 = 32;
pub const DEFAULT_SEED_K: u64 = 3;

/// `floor((2 - 1/32) k)`.
pub fn k0_of(k: u64) -> u64 {
    k0_with_divisor(k, DEFAULT_K0_DIVISOR)
}

/// `floor((2 - 1/d) k)`.
pub fn k0_with_divisor(k: u64, divisor: u64) -> u64 {
    (2 * divisor - 1) * k / divisor
}

fn check_k_alpha(k: u64, alpha: &BigInt, min_k: u64) -> Result<()> {
    if k < min_k {
        return Err(Error::domain(alloc::format!("k must be at least {min_k}")));
    }
    if !alpha.is_positive() {
        return Err(Error::domain("alpha must be a positive integer"));
    }
    Ok(())
}

/// `4 * 2^(k-1) / alpha`.
pub fn single_term_approx(k: u64, alpha: &BigInt, ctx: &PrecisionContext) -> Result<FixedReal> {
    check_k_alpha(k, alpha, 1)?;
    Ok(FixedReal::quotient(&BigInt::one(), alpha, ctx.working(), Rounding::Nearest).mul_pow2(k as i64 + 1))
}

/// `4 (2^(k-1)/alpha + (1 - eta_(k-1)(1/alpha)) / 2)`.
pub fn rational_approx_ttra(k: u64, alpha: &BigInt, ctx: &PrecisionContext) -> Result<FixedReal> {
    check_k_alpha(k, alpha, 2)?;
    let w = ctx.working();
    let x = FixedReal::quotient(&BigInt::one(), alpha, w, Rounding::Nearest);
    let eta = trig::eta_doubling(&x, (k - 1) as usize, ctx)?;
    let tail = (&FixedReal::from_int(1, w) - &eta).mul_pow2(-1);
    Ok((&x.mul_pow2(k as i64 - 1) + &tail).mul_pow2(2))
}

/// Outward-rounded enclosure of the same approximation.
pub fn rational_approx_ttra_interval(k: u64, alpha: &BigInt, prec: u32) -> Result<Interval> {
    check_k_alpha(k, alpha, 2)?;
    let x = BigRational::new(BigInt::one(), alpha.clone());
    let eta = trig::eta_doubling_interval(&Interval::from_ratio(&x, prec), (k - 1) as usize, prec)?;
    let head = Interval::from_ratio(&x, prec).mul_pow2(k as i64 - 1);
    let tail = Interval::from_int(1, prec).sub(&eta, prec).mul_pow2(-1);
    Ok(head.add(&tail, prec).mul_pow2(2))
}

/// `arctan` of a point `|e| < 1`, enclosed between the alternating partial
/// sums `e - e^3/3` and `e - e^3/3 + e^5/5`.
fn arctan_bracket(e: &FixedReal, prec: u32) -> Result<Interval> {
    if e.abs() >= FixedReal::from_int(1, 8) {
        return Err(Error::domain("arctan bracket needs |e| < 1"));
    }
    let t = Interval::point(e.clone());
    let t2 = t.square(prec);
    let t3 = t.mul(&t2, prec);
    let t5 = t3.mul(&t2, prec);
    let three = Interval::from_int(3, prec);
    let five = Interval::from_int(5, prec);
    let first = t.sub(&t3.div(&three, prec)?, prec);
    let second = first.add(&t5.div(&five, prec)?, prec);
    Ok(first.hull(&second))
}

/// A rigorous enclosure of pi built from `alpha` alone:
/// `pi = 4 (2^(k-1) arctan(1/alpha) + arctan((1 - eta)/(1 + eta)))` with
/// `eta = eta_(k-1)(1/alpha)`, which holds for any `alpha` that keeps
/// `2^(k-1) arctan(1/alpha)` inside `(-pi/2, pi/2)`.
pub fn pi_enclosure(k: u64, alpha: &BigInt, prec: u32) -> Result<Interval> {
    check_k_alpha(k, alpha, 2)?;
    let x = BigRational::new(BigInt::one(), alpha.clone());
    let x3 = &x * &x * &x;
    let x5 = &x3 * &x * &x;
    let first = &x - &x3 / BigInt::from(3);
    let second = &first + &x5 / BigInt::from(5);
    let atan = Interval::new(
        FixedReal::from_ratio(&first, prec, Rounding::Down),
        FixedReal::from_ratio(&second, prec, Rounding::Up),
    );
    let eta = trig::eta_doubling_interval(&Interval::from_ratio(&x, prec), (k - 1) as usize, prec)?;
    if !eta.lo().is_positive() {
        return Err(Error::domain("eta_(k-1)(1/alpha) must be positive"));
    }
    let one = Interval::from_int(1, prec);
    let u = one.sub(&eta, prec).div(&one.add(&eta, prec), prec)?;
    let lo = arctan_bracket(u.lo(), prec)?;
    let hi = arctan_bracket(u.hi(), prec)?;
    let closing = Interval::new(lo.lo().clone(), hi.hi().clone());
    Ok(atan.mul_pow2(k as i64 - 1).add(&closing, prec).mul_pow2(2))
}

/// `|e|` where `|reference - approx| = m 10^e`, `0.1 <= m < 1`.
///
/// Equal inputs report the precision of `reference` in decimal digits.
pub fn digits_correct(approx: &FixedReal, reference: &FixedReal) -> u64 {
    let diff = reference - approx;
    match diff.decimal_exponent() {
        Some(e) => e.unsigned_abs(),
        None => reference.prec() as u64 * 30103 / 100_000,
    }
}

/// Pi from Machin's formula with the g/h kernel, checked against
/// `8 arctan(1/2) - 4 arctan(1/7)` with Euler's kernel.
pub fn reference_pi(ctx: &PrecisionContext) -> Result<FixedReal> {
    let w = ctx.working();
    let recip = |d: i64| FixedReal::quotient(&BigInt::one(), &BigInt::from(d), w, Rounding::Nearest);
    let machin = (&trig::arctan_gh(&recip(5), ctx)?.mul_pow2(2) - &trig::arctan_gh(&recip(239), ctx)?).mul_pow2(2);
    let hermann = (&trig::arctan_euler(&recip(2), ctx).mul_pow2(1) - &trig::arctan_euler(&recip(7), ctx)).mul_pow2(2);
    let diff = (&machin - &hermann).abs();
    if diff.top_bit().is_some_and(|t| t > 2 - (ctx.bits() as i64 - 8)) {
        return Err(Error::invariant("reference pi: the two formulas disagree"));
    }
    Ok(machin)
}

/// Reference pi as an interval of radius `2^(2 - bits)`, the agreement
/// level of the two formulas.
pub fn reference_pi_interval(ctx: &PrecisionContext) -> Result<Interval> {
    let pi = reference_pi(ctx)?;
    let radius = FixedReal::from_int(1, 8).mul_pow2(2 - ctx.bits() as i64);
    Ok(Interval::around(&pi, &radius, ctx.working()))
}

/// `s_1 .. s_n` from the reference value.
pub fn reference_bits(n: usize) -> Result<BitSeq> {
    let ctx = PrecisionContext::new(n as u32 + 64)?;
    alpha::bits_from_enclosure(&reference_pi_interval(&ctx)?, n, BitOrigin::FromReferencePi)
}

/// `alpha_1 .. alpha_n` from the reference value.
pub fn reference_alphas(n: usize) -> Result<AlphaSeq> {
    alpha::alpha_from_bits(&reference_bits(n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationRow {
    pub n: u64,
    pub k: u64,
    pub digits: u64,
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub seed_k: u64,
    /// `alpha_(seed_k)`; computed from the radicals when absent.
    pub seed_alpha: Option<BigInt>,
    pub divisor: u64,
    pub guard_bits: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            seed_k: DEFAULT_SEED_K,
            seed_alpha: Some(BigInt::from(5)),
            divisor: DEFAULT_K0_DIVISOR,
            guard_bits: DEFAULT_GUARD_BITS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EngineState {
    pub k: u64,
    pub gamma: BigInt,
    pub alphas: AlphaSeq,
    pub ctx: PrecisionContext,
}

/// Accumulates rows; each [`Engine::step`] is one doubling.
#[derive(Debug, Clone)]
pub struct Engine {
    config: EngineConfig,
    state: EngineState,
    n: u64,
    last_approx: Option<Interval>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Result<Self> {
        if config.seed_k < 2 {
            return Err(Error::domain("seed k must be at least 2"));
        }
        if config.divisor == 0 {
            return Err(Error::domain("k0 divisor must be positive"));
        }
        let gamma = match &config.seed_alpha {
            Some(a) => a.clone(),
            None => {
                let need = crate::radical::required_bits(config.seed_k) as u32;
                crate::radical::alpha_via_radicals(config.seed_k, &PrecisionContext::new(need)?)?
            }
        };
        let alphas = AlphaSeq::from_seed(config.seed_k as usize, gamma.clone())?;
        let ctx = PrecisionContext::with_guard(
            (k0_with_divisor(config.seed_k, config.divisor) as u32 + 64).max(crate::numeric::MIN_BITS),
            config.guard_bits,
        )?;
        Ok(Engine {
            state: EngineState {
                k: config.seed_k,
                gamma,
                alphas,
                ctx,
            },
            config,
            n: 0,
            last_approx: None,
        })
    }

    pub fn state(&self) -> &EngineState {
        &self.state
    }

    pub fn alphas(&self) -> &AlphaSeq {
        &self.state.alphas
    }

    /// Enclosure of the approximation computed in the most recent step.
    pub fn last_approx(&self) -> Option<&Interval> {
        self.last_approx.as_ref()
    }

    /// Index reached after `steps` more doublings.
    pub fn k_after(&self, steps: u64) -> u64 {
        (0..steps).fold(self.state.k, |k, _| k0_with_divisor(k, self.config.divisor))
    }

    /// One doubling: extract `s_(k+1) .. s_k0` from the certified hull of
    /// the approximation and pi, then advance to `k0`.
    pub fn step(&mut self, reference: &FixedReal) -> Result<IterationRow> {
        let k = self.state.k;
        let k0 = k0_with_divisor(k, self.config.divisor);
        if k0 <= k {
            return Err(Error::domain("k0 schedule does not advance"));
        }
        self.state.ctx = self.state.ctx.resized(k0 as u32 + 64)?;
        let prec = self.state.ctx.working();
        let approx = rational_approx_ttra_interval(k, &self.state.gamma, prec)?;
        let pi = pi_enclosure(k, &self.state.gamma, prec)?;
        let bits = alpha::bits_from_pi_approx(&approx.hull(&pi), k0 as usize)?;
        let known = self.state.alphas.parities();
        if bits.bits()[..k as usize] != known[..k as usize] {
            return Err(Error::invariant(alloc::format!(
                "certified bits disagree with alpha_{k}; the seed is not a prefix of 1/pi"
            )));
        }
        for i in k + 1..=k0 {
            self.state.alphas.push_bit(bits.get(i as usize).unwrap());
        }
        self.state.k = k0;
        self.state.gamma = self.state.alphas.last().unwrap().clone();
        self.n += 1;
        let digits = digits_correct(&approx.midpoint(), reference);
        self.last_approx = Some(approx);
        Ok(IterationRow {
            n: self.n,
            k: k0,
            digits,
        })
    }
}

/// Bits of reference pi needed to score `iterations` rows.
fn reference_bits_for(engine: &Engine, iterations: u64) -> u32 {
    let last_k = engine.k_after(iterations.saturating_sub(1));
    (2 * last_k + 128) as u32
}

pub fn run_engine_with(config: EngineConfig, iterations: u64) -> Result<(Vec<IterationRow>, AlphaSeq)> {
    if iterations == 0 {
        return Err(Error::domain("need at least one iteration"));
    }
    let mut engine = Engine::new(config)?;
    let reference = reference_pi(&PrecisionContext::new(reference_bits_for(&engine, iterations))?)?;
    let mut rows = Vec::with_capacity(iterations as usize);
    for _ in 0..iterations {
        rows.push(engine.step(&reference)?);
    }
    Ok((rows, engine.state.alphas))
}

pub fn run_engine(iterations: u64) -> Result<Vec<IterationRow>> {
    Ok(run_engine_with(EngineConfig::default(), iterations)?.0)
}

/// Pi truncated to `count` decimals, certified: the engine runs until its
/// approximation has at least `count` correct digits, and the enclosure
/// built from the last `alpha` must truncate to one string.
pub fn pi_digits(count: usize) -> Result<(String, Vec<IterationRow>)> {
    let mut engine = Engine::new(EngineConfig::default())?;
    let mut rows = Vec::new();
    let mut ref_bits = 256u32;
    let mut reference = reference_pi(&PrecisionContext::new(ref_bits)?)?;
    loop {
        let next_k = engine.k_after(1);
        if 2 * engine.state.k + 128 > ref_bits as u64 {
            ref_bits = (2 * next_k + 128) as u32;
            reference = reference_pi(&PrecisionContext::new(ref_bits)?)?;
        }
        let row = engine.step(&reference)?;
        rows.push(row);
        if row.digits as usize >= count {
            break;
        }
    }
    let prec = (count as u32 * 10 / 3) + 128;
    let enc = pi_enclosure(engine.state.k, &engine.state.gamma, prec)?;
    let lo = enc.lo().to_decimal_string(count);
    let hi = enc.hi().to_decimal_string(count);
    if lo != hi {
        return Err(Error::precision(
            "pi enclosure straddles a decimal boundary",
            prec as u64 + 64,
            prec as u64,
        ));
    }
    Ok((lo, rows))
}

/// `n`, and the digits of `4 (2^(k-1)/alpha + (1 - tan_split(k, sigma, n))/2)`.
pub fn tan_bench(k: u64, sigma: u64, n_max: usize, ctx: &PrecisionContext) -> Result<Vec<(usize, u64)>> {
    if k < 2 {
        return Err(Error::domain("tan benchmark needs k >= 2"));
    }
    let alphas = reference_alphas(k as usize)?;
    let alpha = alphas.get(k as usize).unwrap().clone();
    let reference = reference_pi(ctx)?;
    let w = ctx.working();
    let head = FixedReal::quotient(&BigInt::one(), &alpha, w, Rounding::Nearest).mul_pow2(k as i64 - 1);
    let one = FixedReal::from_int(1, w);
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let t = trig::tan_split(k, sigma, &alpha, n, ctx)?;
        let approx = (&head + &(&one - &t).mul_pow2(-1)).mul_pow2(2);
        out.push((n, digits_correct(&approx, &reference)));
    }
    Ok(out)
}

/// Naive doubling with no certification: `alpha_k0` read straight off
/// `1 / approx`. Kept to demonstrate the failure the certified path avoids.
pub fn naive_extend(k: u64, alpha: &BigInt, k0: u64, ctx: &PrecisionContext) -> Result<AlphaSeq> {
    let approx = rational_approx_ttra(k, alpha, ctx)?;
    let bits = alpha::bits_from_pi_point(&approx, k0 as usize, ctx)?;
    alpha::alpha_from_bits(&bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn k0_schedule() {
        assert_eq!(k0_of(3), 5);
        assert_eq!(k0_of(64), 126);
        assert_eq!(k0_of(3720), 7323);
        assert_eq!(k0_with_divisor(10, 2), 15);
    }

    #[test]
    fn small_approximations() {
        let c = ctx(128);
        let pi = reference_pi(&c).unwrap();
        let s = single_term_approx(7, &BigInt::from(81), &c).unwrap();
        assert_eq!(digits_correct(&s, &pi), 1);
        let t = rational_approx_ttra(7, &BigInt::from(81), &c).unwrap();
        assert_eq!(digits_correct(&t, &pi), 4);
        // 4 (1 + (1 - 4/3)/2) = 10/3
        let t2 = rational_approx_ttra(2, &BigInt::from(2), &c).unwrap();
        let ten_thirds = FixedReal::quotient(&BigInt::from(10), &BigInt::from(3), 192, Rounding::Nearest);
        assert!((&t2 - &ten_thirds).abs().top_bit().is_none_or(|t| t < -150));
        assert_eq!(single_term_approx(3, &BigInt::from(5), &c).unwrap().to_f64(), 3.2);
    }

    #[test]
    fn digit_convention_boundaries() {
        let r = FixedReal::from_int(0, 64);
        let tenth_thousandth = FixedReal::from_ratio(&BigRational::new(1.into(), 10000.into()), 256, Rounding::Nearest);
        // the rounded value sits a hair away from 10^-4; both sides give 3 or 4
        let d = digits_correct(&tenth_thousandth, &r);
        assert!(d == 3 || d == 4);
        let exact = FixedReal::from_int(1, 64).mul_pow2(-4); // 0.0625
        assert_eq!(digits_correct(&exact, &r), 1);
        let p = FixedReal::from_int(3, 64);
        assert_eq!(digits_correct(&p, &p), 64 * 30103 / 100_000);
    }

    #[test]
    fn enclosures_contain_pi() {
        let pi = reference_pi(&ctx(512)).unwrap();
        for (k, a) in [(3u64, 5i64), (7, 81), (25, 21361414)] {
            let e = pi_enclosure(k, &BigInt::from(a), 256).unwrap();
            assert!(e.contains(&pi), "k = {k}");
            if k <= 7 {
                let x = BigRational::new(BigInt::one(), BigInt::from(a));
                let eta = trig::eta_doubling_exact(&x, k as usize - 1).unwrap();
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let exact = (x * BigInt::from(1u64 << (k - 1)) + (BigRational::one() - eta) * half) * BigInt::from(4);
                let t = rational_approx_ttra_interval(k, &BigInt::from(a), 256).unwrap();
                assert!(t.lo().to_ratio() <= exact && exact <= t.hi().to_ratio());
                assert!(t.width().top_bit().unwrap() < -240);
            }
        }
    }

    #[test]
    fn first_rows() {
        let rows = run_engine(5).unwrap();
        let ks: Vec<u64> = rows.iter().map(|r| r.k).collect();
        let ds: Vec<u64> = rows.iter().map(|r| r.digits).collect();
        assert_eq!(ks, [5, 9, 17, 33, 64]);
        assert_eq!(ds, [1, 2, 4, 9, 20]);
    }

    #[test]
    fn reference_matches_binary_row() {
        let s = crate::alpha::binary_recip_pi_from_parity(&reference_alphas(50).unwrap(), 50).unwrap();
        assert_eq!(s, "0.010100010111110011000001101101110010011100100010000");
    }
}
