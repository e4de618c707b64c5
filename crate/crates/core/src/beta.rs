//! The rational `beta_k` that closes the two-term formula
//! `pi/4 = 2^(k-1) arctan(1/alpha_k) + arctan(1/beta_k)`.
//!
//! `kappa_n + i lambda_n = ((alpha + i)/(alpha - i))^(2^(n-1))` is produced
//! by repeated squaring, and `beta_k = kappa_k / (1 - lambda_k)`.

use core::cmp::Ordering;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{FixedReal, GaussianRational, Interval, PrecisionContext, Rounding};
use crate::radical;
use crate::trig;

/// Largest `k` the complex oracle accepts; its operands double in length per step.
pub const COMPLEX_ORACLE_MAX_K: u64 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaLambdaState {
    pub n: u64,
    pub kappa: BigRational,
    pub lambda: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaConstant {
    pub k: u64,
    pub alpha: BigInt,
    pub beta: BigRational,
}

impl BetaConstant {
    pub fn numer(&self) -> &BigInt {
        self.beta.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.beta.denom()
    }
}

fn check_inputs(k: u64, alpha: &BigInt) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if k == 1 {
        return Err(Error::degenerate("k = 1: lambda_1 = 1 leaves 1 - lambda_k = 0"));
    }
    if !alpha.is_positive() {
        return Err(Error::domain("alpha must be a positive integer"));
    }
    Ok(())
}

/// `(alpha + i)^(2^n) = u + v i`, i.e. `kappa_n` and `lambda_n` scaled by
/// `N_n = (alpha^2 + 1)^(2^(n-1))`, advanced by `kappa <- kappa^2 - lambda^2`,
/// `lambda <- 2 kappa lambda` on the scaled values.
struct Scaled {
    n: u64,
    u: BigInt,
    v: BigInt,
}

impl Scaled {
    fn first(alpha: &BigInt) -> Self {
        Scaled {
            n: 1,
            u: alpha * alpha - 1u32,
            v: alpha * 2u32,
        }
    }

    fn step(&mut self) {
        let u = &self.u * &self.u - &self.v * &self.v;
        self.v = (&self.u * &self.v) << 1usize;
        self.u = u;
        self.n += 1;
    }
}

/// `(kappa_n, lambda_n)` for `n = 1..=k`.
pub fn kappa_lambda_trace(k: u64, alpha: &BigInt) -> Result<Vec<KappaLambdaState>> {
    if k == 0 || !alpha.is_positive() {
        return Err(Error::domain("trace needs k >= 1 and alpha >= 1"));
    }
    let mut s = Scaled::first(alpha);
    let mut den = alpha * alpha + 1u32;
    let mut out = Vec::with_capacity(k as usize);
    loop {
        out.push(KappaLambdaState {
            n: s.n,
            kappa: BigRational::new(s.u.clone(), den.clone()),
            lambda: BigRational::new(s.v.clone(), den.clone()),
        });
        if s.n == k {
            return Ok(out);
        }
        s.step();
        den = &den * &den;
    }
}

/// `beta_k` from the squaring iteration.
///
/// With `a + b i = (alpha + i)^(2^(k-1))` (the scaled state after step
/// `k - 1`), step `k` gives `kappa_k = (a^2 - b^2)/N` and
/// `1 - lambda_k = (a - b)^2/N` with `N = a^2 + b^2`, so
/// `beta_k = (a + b)/(a - b)`. A common factor of `a + b` and `a - b`
/// divides `2 gcd(a, b)`, which is a power of two, so stripping shared
/// trailing zero bits reduces the fraction without a gcd of the (very long)
/// operands.
pub fn beta_two_step(k: u64, alpha: &BigInt) -> Result<BetaConstant> {
    check_inputs(k, alpha)?;
    let mut s = Scaled::first(alpha);
    while s.n < k - 1 {
        s.step();
    }
    let mut num = &s.u + &s.v;
    let mut den = &s.u - &s.v;
    if den.is_zero() {
        return Err(Error::invariant("1 - lambda_k vanished"));
    }
    let shift = num.trailing_zeros().unwrap_or(0).min(den.trailing_zeros().unwrap_or(0));
    num >>= shift as usize;
    den >>= shift as usize;
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    Ok(BetaConstant {
        k,
        alpha: alpha.clone(),
        beta: BigRational::new_raw(num, den),
    })
}

/// `beta_k = 2 / (((alpha + i)/(alpha - i))^(2^(k-1)) - i) - i`, evaluated
/// in exact Gaussian rationals.
pub fn beta_complex_oracle(k: u64, alpha: &BigInt) -> Result<BetaConstant> {
    check_inputs(k, alpha)?;
    if k > COMPLEX_ORACLE_MAX_K {
        return Err(Error::domain(alloc::format!(
            "complex oracle is limited to k <= {COMPLEX_ORACLE_MAX_K}"
        )));
    }
    let i = GaussianRational::i();
    let a = GaussianRational::from_ints(alpha.clone(), 0);
    let z = (&a + &i).checked_div(&(&a - &i))?;
    let w = z.pow(&(BigInt::one() << (k - 1) as usize));
    let two = GaussianRational::from_ints(2, 0);
    let b = &two.checked_div(&(&w - &i))? - &i;
    if !b.im.is_zero() {
        return Err(Error::invariant("beta has a nonzero imaginary part"));
    }
    Ok(BetaConstant {
        k,
        alpha: alpha.clone(),
        beta: b.re,
    })
}

/// `|beta_k - cos(Phi)/(1 - sin(Phi))|` with `Phi = 2^(k-1) arctan(2 alpha/(alpha^2 - 1))`.
///
/// `cos` and `sin` come from `t = tan(Phi/2)`; the angle is evaluated with
/// `k` extra bits since scaling by `2^(k-1)` magnifies its error.
pub fn beta_trig_check(k: u64, alpha: &BigInt, ctx: &PrecisionContext) -> Result<FixedReal> {
    check_inputs(k, alpha)?;
    let a2m1 = alpha * alpha - 1u32;
    if a2m1.is_zero() {
        return Err(Error::singular("alpha^2 - 1 = 0"));
    }
    let exact = beta_two_step(k, alpha)?;
    let inner = ctx.resized(ctx.bits() + 2 * k as u32)?;
    let w = inner.working();
    let arg = FixedReal::quotient(&(alpha * 2u32), &a2m1, w, Rounding::Nearest);
    let half_phi = trig::arctan_euler(&arg, &inner).mul_pow2(k as i64 - 2);
    let t = trig::tan_converged(&half_phi, &inner)?.value;
    let one = FixedReal::from_int(1, w);
    let t2 = &t * &t;
    let den = &one + &t2;
    let cos = (&one - &t2).div_round(&den, w, Rounding::Nearest)?;
    let sin = t.mul_pow2(1).div_round(&den, w, Rounding::Nearest)?;
    let trig_beta = cos.div_round(&(&one - &sin), w, Rounding::Nearest)?;
    let exact = FixedReal::from_ratio(&exact.beta, w, Rounding::Nearest);
    Ok((&exact - &trig_beta).abs())
}

/// Residual of `arctan(1/beta_k) = -2^(k-1) arctan(g / (1 + alpha r))`,
/// where `r = a_k / sqrt(2 - a_(k-1))`, `alpha = floor(r)`, `g = r - alpha`.
pub fn fractional_link_check(k: u64, ctx: &PrecisionContext) -> Result<FixedReal> {
    if !(2..=30).contains(&k) {
        return Err(Error::domain("fractional link check covers 2 <= k <= 30"));
    }
    let alpha = radical::alpha_via_radicals(k, ctx)?;
    let r = radical::radical_ratio(k, ctx)?.midpoint();
    let w = ctx.working();
    let frac = r.sub_round(&FixedReal::from_int(alpha.clone(), w), w, Rounding::Nearest);
    let den = FixedReal::from_int(1, w).add_round(
        &r.mul_round(&FixedReal::from_int(alpha.clone(), w), w, Rounding::Nearest),
        w,
        Rounding::Nearest,
    );
    let rhs = trig::arctan_euler(&frac.div_round(&den, w, Rounding::Nearest)?, ctx).mul_pow2(k as i64 - 1);
    let beta = beta_two_step(k, &alpha)?.beta;
    let inv = FixedReal::from_ratio(&beta.recip(), w, Rounding::Nearest);
    let lhs = trig::arctan_euler(&inv, ctx);
    Ok((&lhs + &rhs).abs())
}

/// Enclosure of `1/beta_k = (1 - eta)/(1 + eta)`, `eta = eta_(k-1)(1/alpha)`.
///
/// Equivalent to `kappa_k/(1 - lambda_k)` inverted, but with no operand that
/// doubles in length per step, so it reaches any `k`.
pub fn beta_reciprocal_enclosure(k: u64, alpha: &BigInt, prec: u32) -> Result<Interval> {
    check_inputs(k, alpha)?;
    let x = BigRational::new(BigInt::one(), alpha.clone());
    let eta = trig::eta_doubling_interval(&Interval::from_ratio(&x, prec), (k - 1) as usize, prec)?;
    let one = Interval::from_int(1, prec);
    one.sub(&eta, prec).div(&one.add(&eta, prec), prec)
}

/// Certified sign of `beta_k`.
pub fn beta_sign(k: u64, alpha: &BigInt, prec: u32) -> Result<Ordering> {
    let r = beta_reciprocal_enclosure(k, alpha, prec)?;
    if r.hi().is_negative() {
        Ok(Ordering::Less)
    } else if r.lo().is_positive() {
        Ok(Ordering::Greater)
    } else {
        Err(Error::precision(
            "1/beta_k enclosure contains zero",
            prec as u64 * 2,
            prec as u64,
        ))
    }
}

/// `beta_k` reduced to a mixed number `floor + frac`; handy for checks on
/// the closing term.
pub fn beta_floor(b: &BetaConstant) -> BigInt {
    b.beta.numer().div_floor(b.beta.denom())
}
