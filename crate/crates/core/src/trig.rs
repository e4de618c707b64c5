//! Tangent and arctangent kernels built only from ring operations.
//!
//! Series are summed until the bound on the remaining tail drops below
//! `2^-working` relative to the running sum.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{FixedReal, Interval, PrecisionContext, Rounding};

/// A series value together with the number of terms it took.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: FixedReal,
    pub terms: usize,
}

fn below_tolerance(bound: &FixedReal, sum: &FixedReal, w: u32) -> bool {
    match (bound.top_bit(), sum.top_bit()) {
        (None, _) => true,
        (Some(b), Some(s)) => b < s - w as i64,
        (Some(_), None) => false,
    }
}

/// `x / (1 + sqrt(1 + x^2))`, whose arctangent is half that of `x`.
///
/// Both series slow to a crawl for large `|x|`; one halving brings any
/// argument below 1 in magnitude.
fn halve_argument(x: &FixedReal, w: u32) -> FixedReal {
    let one = FixedReal::from_int(1, w);
    let root = (&one + &(x * x)).sqrt_round(w, Rounding::Nearest).unwrap();
    x.div_round(&(&one + &root), w, Rounding::Nearest).unwrap()
}

fn needs_halving(x: &FixedReal) -> bool {
    x.abs() > FixedReal::from_int(1, 8)
}

/// Euler's series `sum 2^2n (n!)^2 / (2n+1)! * x^(2n+1) / (1+x^2)^(n+1)`.
pub fn arctan_euler(x: &FixedReal, ctx: &PrecisionContext) -> FixedReal {
    arctan_euler_counted(x, ctx).value
}

pub fn arctan_euler_counted(x: &FixedReal, ctx: &PrecisionContext) -> SeriesValue {
    let w = ctx.working();
    if x.is_zero() {
        return SeriesValue {
            value: FixedReal::zero(w),
            terms: 0,
        };
    }
    if needs_halving(x) {
        let half = arctan_euler_counted(&halve_argument(x, w), ctx);
        return SeriesValue {
            value: half.value.mul_pow2(1),
            terms: half.terms,
        };
    }
    let x = x.with_prec(w, Rounding::Nearest);
    let x2 = &x * &x;
    let one_plus = x2.add_round(&FixedReal::from_int(1, w), w, Rounding::Nearest);
    let y = x2.div_round(&one_plus, w, Rounding::Nearest).unwrap();
    // the tail after a term t is at most t * y / (1 - y) = t * x^2
    let tail_factor = one_plus.clone();
    let mut term = x.div_round(&one_plus, w, Rounding::Nearest).unwrap();
    let mut sum = term.clone();
    let mut n: u64 = 0;
    loop {
        n += 1;
        term = (&term * &y)
            .mul_round(&FixedReal::from_int(2 * n, w), w, Rounding::Nearest)
            .div_round(&FixedReal::from_int(2 * n + 1, w), w, Rounding::Nearest)
            .unwrap();
        sum = &sum + &term;
        if below_tolerance(&(&term * &tail_factor), &sum, w) {
            break;
        }
    }
    SeriesValue {
        value: sum,
        terms: n as usize + 1,
    }
}

/// The g/h iterative series `2 sum 1/(2n-1) * g_n / (g_n^2 + h_n^2)`.
pub fn arctan_gh(x: &FixedReal, ctx: &PrecisionContext) -> Result<FixedReal> {
    arctan_gh_counted(x, ctx).map(|s| s.value)
}

pub fn arctan_gh_counted(x: &FixedReal, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if x.is_zero() {
        return Err(Error::domain("g/h arctangent series is undefined at x = 0 (g1 = 2/x)"));
    }
    let w = ctx.working();
    if needs_halving(x) {
        let half = arctan_gh_counted(&halve_argument(x, w), ctx)?;
        return Ok(SeriesValue {
            value: half.value.mul_pow2(1),
            terms: half.terms,
        });
    }
    let x = x.with_prec(w, Rounding::Nearest);
    let inv_x = x.recip_round(w, Rounding::Nearest)?;
    let four_over_x = inv_x.mul_pow2(2);
    let damp = FixedReal::from_int(1, w) - (&four_over_x * &inv_x);
    let mut g = inv_x.mul_pow2(1);
    let mut h = FixedReal::from_int(1, w);
    // terms shrink at least by x^2/(x^2+4); tail <= term * (1 + x^2/4)
    let tail_factor = FixedReal::from_int(1, w) + (&x * &x).mul_pow2(-2);
    let mut sum = FixedReal::zero(w);
    let mut n: u64 = 0;
    loop {
        n += 1;
        if n > 1 {
            let g_next = &(&g * &damp) + &(&h * &four_over_x);
            let h_next = &(&h * &damp) - &(&g * &four_over_x);
            g = g_next;
            h = h_next;
        }
        let norm = &(&g * &g) + &(&h * &h);
        let odd = FixedReal::from_int(2 * n - 1, w);
        let term = g.mul_pow2(1).div_round(&(&odd * &norm), w, Rounding::Nearest)?;
        sum = &sum + &term;
        // |term| <= 2 / ((2n-1) |w_n|); bound it through |w_n|^2 = norm
        let bound_sq = FixedReal::from_int(4, w).div_round(&(&(&odd * &odd) * &norm), w, Rounding::Up)?;
        let bound = bound_sq.sqrt_round(64, Rounding::Up)?;
        if below_tolerance(&(&bound * &tail_factor), &sum, w) {
            break;
        }
    }
    Ok(SeriesValue {
        value: sum,
        terms: n as usize,
    })
}

/// Partial sums `(p_n, q_n)` of the sine series at `x` and at `2x`, as used
/// by the `2 p^2 / q` tangent kernel.
pub fn pq_partial(x: &FixedReal, n: usize, ctx: &PrecisionContext) -> (FixedReal, FixedReal) {
    let w = ctx.working();
    let mut p = FixedReal::zero(w);
    let mut q = FixedReal::zero(w);
    let mut power = x.with_prec(w, Rounding::Nearest);
    let x_sq = &power * &power;
    let mut fact = BigInt::one();
    for m in 1..=n as u64 {
        let r = power
            .div_round(&FixedReal::from_int(fact.clone(), w), w, Rounding::Nearest)
            .unwrap();
        let r = if m % 2 == 0 { -r } else { r };
        p = &p + &r;
        q = &q + &r.mul_pow2(2 * m as i64 - 1);
        power = &power * &x_sq;
        fact *= BigInt::from((2 * m) * (2 * m + 1));
    }
    (p, q)
}

/// `2 p_n^2 / q_n`, the n-term truncation of the tangent limit.
pub fn tan_pq(x: &FixedReal, n: usize, ctx: &PrecisionContext) -> Result<FixedReal> {
    if n == 0 {
        return Err(Error::domain("tan_pq needs at least one term"));
    }
    let (p, q) = pq_partial(x, n, ctx);
    if q.is_zero() {
        return Err(Error::singular("q_n vanished in the tangent kernel"));
    }
    let w = ctx.working();
    (&p * &p).mul_pow2(1).div_round(&q, w, Rounding::Nearest)
}

/// Exact rational `(p_n, q_n)`.
pub fn pq_partial_exact(x: &BigRational, n: usize) -> (BigRational, BigRational) {
    let mut p = BigRational::zero();
    let mut q = BigRational::zero();
    let mut power = x.clone();
    let x_sq = x * x;
    let mut fact = BigInt::one();
    for m in 1..=n as u64 {
        let mut r = &power / BigRational::from_integer(fact.clone());
        if m % 2 == 0 {
            r = -r;
        }
        q += &r * BigRational::from_integer(BigInt::one() << (2 * m - 1) as usize);
        p += r;
        power *= &x_sq;
        fact *= BigInt::from((2 * m) * (2 * m + 1));
    }
    (p, q)
}

/// Tangent summed until the next `q` term is below working precision.
pub fn tan_converged(x: &FixedReal, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let w = ctx.working();
    if x.is_zero() {
        return Ok(SeriesValue {
            value: FixedReal::zero(w),
            terms: 0,
        });
    }
    let mut p = FixedReal::zero(w);
    let mut q = FixedReal::zero(w);
    let mut power = x.with_prec(w, Rounding::Nearest);
    let x_sq = &power * &power;
    let mut fact = BigInt::one();
    let mut m: u64 = 0;
    loop {
        m += 1;
        let r = power.div_round(&FixedReal::from_int(fact.clone(), w), w, Rounding::Nearest)?;
        let r = if m.is_multiple_of(2) { -r } else { r };
        let q_term = r.mul_pow2(2 * m as i64 - 1);
        p = &p + &r;
        q = &q + &q_term;
        if below_tolerance(&q_term, &q, w) && below_tolerance(&r, &p, w) {
            break;
        }
        power = &power * &x_sq;
        fact *= BigInt::from((2 * m) * (2 * m + 1));
    }
    if q.is_zero() {
        return Err(Error::singular("sin(2x) partial sum vanished"));
    }
    Ok(SeriesValue {
        value: (&p * &p).mul_pow2(1).div_round(&q, w, Rounding::Nearest)?,
        terms: m as usize,
    })
}

/// `eta_m(x) = tan(2^m arctan x)` by `m` applications of `t -> 2t/(1-t^2)`.
pub fn eta_doubling(x: &FixedReal, m: usize, ctx: &PrecisionContext) -> Result<FixedReal> {
    let w = ctx.working();
    let one = FixedReal::from_int(1, w);
    let singular_below = -(ctx.bits() as i64 / 2);
    let mut eta = x.with_prec(w, Rounding::Nearest);
    for step in 1..=m {
        let den = &one - &(&eta * &eta);
        if den.top_bit().is_none_or(|t| t <= singular_below) {
            return Err(Error::singular(alloc::format!(
                "1 - eta^2 vanishes at doubling step {step}"
            )));
        }
        eta = eta.mul_pow2(1).div_round(&den, w, Rounding::Nearest)?;
    }
    Ok(eta)
}

/// Exact rational version of [`eta_doubling`].
pub fn eta_doubling_exact(x: &BigRational, m: usize) -> Result<BigRational> {
    let one = BigRational::one();
    let mut eta = x.clone();
    for step in 1..=m {
        let den = &one - &eta * &eta;
        if den.is_zero() {
            return Err(Error::singular(alloc::format!(
                "1 - eta^2 is zero at doubling step {step}"
            )));
        }
        eta = (&eta + &eta) / den;
    }
    Ok(eta)
}

/// Interval version of [`eta_doubling`] with outward rounding.
///
/// The map is increasing on each branch, so the image of `[a, b]` is
/// enclosed by the images of the endpoints as long as no iterate reaches
/// `+-1`.
pub fn eta_doubling_interval(x: &Interval, m: usize, prec: u32) -> Result<Interval> {
    let one = Interval::from_int(1, prec);
    let step = |v: &Interval| -> Result<Interval> {
        let den = one.sub(&v.square(prec), prec);
        if den.contains_zero() {
            return Err(Error::singular("eta iterate interval reaches +-1"));
        }
        v.mul_pow2(1).div(&den, prec)
    };
    let mut eta = x.clone();
    for _ in 0..m {
        let den = one.sub(&eta.square(prec), prec);
        if den.contains_zero() {
            return Err(Error::singular("eta iterate interval reaches +-1"));
        }
        let lo = step(&Interval::point(eta.lo().clone()))?;
        let hi = step(&Interval::point(eta.hi().clone()))?;
        eta = Interval::new(lo.lo().clone(), hi.hi().clone());
    }
    Ok(eta)
}

/// `eta_sigma(tan(y / 2^sigma))` with the tangent summed to convergence.
pub fn tan_reduced(y: &FixedReal, sigma: usize, ctx: &PrecisionContext) -> Result<FixedReal> {
    let t = tan_converged(&y.mul_pow2(-(sigma as i64)), ctx)?.value;
    eta_doubling(&t, sigma, ctx)
}

fn default_sigma(ctx: &PrecisionContext) -> usize {
    (ctx.working() as u64).sqrt() as usize
}

/// `tan(2^(k-1) / alpha) ~ eta_sigma(tan_pq(2^(k-1-sigma) / alpha, n))`.
pub fn tan_split(k: u64, sigma: u64, alpha: &BigInt, n: usize, ctx: &PrecisionContext) -> Result<FixedReal> {
    if k == 0 || sigma > k - 1 {
        return Err(Error::domain("tan_split needs 0 <= sigma <= k - 1"));
    }
    if alpha.is_zero() {
        return Err(Error::domain("alpha must be nonzero"));
    }
    let w = ctx.working();
    let x = FixedReal::quotient(&BigInt::one(), alpha, w, Rounding::Nearest).mul_pow2((k - 1 - sigma) as i64);
    let t = tan_pq(&x, n, ctx)?;
    eta_doubling(&t, sigma as usize, ctx)
}

/// Iterates of `theta <- theta + 2^-k (1 - tan(2^(k-1) theta))` from
/// `theta_1 = 2^-k`; the list has `steps` entries.
pub fn theta_trace(k: u64, steps: usize, ctx: &PrecisionContext) -> Result<Vec<FixedReal>> {
    if k == 0 {
        return Err(Error::domain("theta iteration needs k >= 1"));
    }
    let w = ctx.working();
    let sigma = default_sigma(ctx);
    let one = FixedReal::from_int(1, w);
    let mut theta = FixedReal::from_int(1, w).mul_pow2(-(k as i64));
    let mut out = Vec::with_capacity(steps);
    for i in 0..steps {
        if i > 0 {
            let t = tan_reduced(&theta.mul_pow2(k as i64 - 1), sigma, ctx)?;
            theta = &theta + &(&one - &t).mul_pow2(-(k as i64));
        }
        out.push(theta.clone());
    }
    Ok(out)
}

pub fn theta_iteration(k: u64, steps: usize, ctx: &PrecisionContext) -> Result<FixedReal> {
    if steps == 0 {
        return Err(Error::domain("theta iteration needs at least one step"));
    }
    Ok(theta_trace(k, steps, ctx)?.pop().unwrap())
}

/// Newton iterates for `arctan(1/c)`: `s <- s - cos^2 s (tan s - 1/c)`,
/// with `cos^2` and `tan` formed from the half-angle tangent.
pub fn arctan_newton_trace(
    c: &BigRational,
    start: &FixedReal,
    steps: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<FixedReal>> {
    if c.is_zero() {
        return Err(Error::domain("arctan(1/c) needs c != 0"));
    }
    let w = ctx.working();
    let target = FixedReal::from_ratio(&c.recip(), w, Rounding::Nearest);
    let one = FixedReal::from_int(1, w);
    let sigma = default_sigma(ctx);
    let mut s = start.with_prec(w, Rounding::Nearest);
    let mut out = Vec::with_capacity(steps);
    for i in 0..steps {
        if i > 0 {
            let half_tan = tan_reduced(&s.mul_pow2(-1), sigma, ctx)?;
            let t2 = &half_tan * &half_tan;
            let sin = half_tan.mul_pow2(1).div_round(&(&one + &t2), w, Rounding::Nearest)?;
            let tan = half_tan.mul_pow2(1).div_round(&(&one - &t2), w, Rounding::Nearest)?;
            let cos_sq = &one - &(&sin * &sin);
            s = &s - &(&cos_sq * &(&tan - &target));
        }
        out.push(s.clone());
    }
    Ok(out)
}

pub fn arctan_newton(c: &BigRational, start: &FixedReal, steps: usize, ctx: &PrecisionContext) -> Result<FixedReal> {
    if steps == 0 {
        return Err(Error::domain("Newton iteration needs at least one step"));
    }
    Ok(arctan_newton_trace(c, start, steps, ctx)?.pop().unwrap())
}

/// Arctangent of an exact rational, the kernel used for formula checks.
pub fn arctan_ratio(x: &BigRational, ctx: &PrecisionContext) -> FixedReal {
    arctan_euler(&FixedReal::from_ratio(x, ctx.working(), Rounding::Nearest), ctx)
}
