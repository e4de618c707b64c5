//! Machin-like formulas `pi/4 = sum c_j arctan(1/r_j)`.
//!
//! The two-term formula closes with `beta_k`; splitting the closing term as
//! `arctan(1/mu) = arctan(1/floor(mu)) + arctan(1/mu')`,
//! `mu' = (1 + floor(mu) mu) / (floor(mu) - mu)`, trades it for integer
//! reciprocals one at a time. Every step is an exact identity.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::beta;
use crate::engine;
use crate::error::{Error, Result};
use crate::numeric::{digit_count, floor_rational, FixedReal, PrecisionContext, Rounding};
use crate::trig;

/// `coeff * arctan(1 / reciprocal)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub reciprocal: BigRational,
}

impl Term {
    pub fn new(coeff: impl Into<BigInt>, reciprocal: BigRational) -> Self {
        Term {
            coeff: coeff.into(),
            reciprocal,
        }
    }

    /// The arctangent argument `1 / reciprocal` as `(numerator, denominator)`
    /// with a positive denominator.
    pub fn argument(&self) -> (BigInt, BigInt) {
        let r = self.reciprocal.recip();
        (r.numer().clone(), r.denom().clone())
    }

    /// Digit counts of the argument's numerator and denominator.
    pub fn digit_counts(&self) -> (usize, usize) {
        let (n, d) = self.argument();
        (digit_count(&n), digit_count(&d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachinFormula {
    pub terms: Vec<Term>,
    /// The closing reciprocal turned out to be an integer before the
    /// requested number of splits.
    pub terminated_early: bool,
}

impl MachinFormula {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.iter().any(|t| t.reciprocal.is_zero()) {
            return Err(Error::domain("reciprocal must be nonzero"));
        }
        Ok(MachinFormula {
            terms,
            terminated_early: false,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn closing(&self) -> Option<&Term> {
        self.terms.last()
    }

    /// Replaces an integer closing term `c arctan(1/W)` by `N` terms from
    /// [`expand_terminal`].
    pub fn with_terminal_split(&self, n: usize) -> Result<MachinFormula> {
        let last = self.closing().ok_or_else(|| Error::domain("empty formula"))?;
        if !last.reciprocal.is_integer() {
            return Err(Error::domain("closing reciprocal is not an integer"));
        }
        let w = last.reciprocal.to_integer();
        let negative = w.is_negative();
        let omegas = expand_terminal(&BigRational::from_integer(w.abs()), n)?;
        let mut terms = self.terms[..self.terms.len() - 1].to_vec();
        for om in omegas {
            let r = if negative { -om } else { om };
            terms.push(Term::new(last.coeff.clone(), BigRational::from_integer(r)));
        }
        MachinFormula::new(terms)
    }

    /// `pi/4 = 8 arctan(1/10) - arctan(1/84) - ...`; negative arguments are
    /// written as subtractions.
    pub fn render(&self) -> String {
        let mut out = String::from("pi/4 =");
        for (i, t) in self.terms.iter().enumerate() {
            let (n, d) = t.argument();
            let negative = n.is_negative() != t.coeff.is_negative();
            let c = t.coeff.abs();
            if i == 0 {
                out.push_str(if negative { " -" } else { "" });
            } else {
                out.push_str(if negative { " -" } else { " +" });
            }
            out.push(' ');
            if !c.is_one() {
                let _ = write!(out, "{c} ");
            }
            let _ = write!(out, "arctan({}/{d})", n.abs());
        }
        out
    }
}

/// `mu_1 = beta_k` and its successors; `floors[m]` is `floor(mus[m])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuChain {
    pub k: u64,
    pub mus: Vec<BigRational>,
    pub floors: Vec<BigInt>,
    pub terminated_early: bool,
}

/// `(1 + f mu) / (f - mu)` with `f = floor(mu)`.
pub fn mu_step(mu: &BigRational) -> Result<(BigInt, BigRational)> {
    let f = floor_rational(mu);
    let fr = BigRational::from_integer(f.clone());
    let den = &fr - mu;
    if den.is_zero() {
        return Err(Error::domain("mu is an integer; the chain ends here"));
    }
    Ok((f, (BigRational::one() + fr * mu) / den))
}

/// Inverse of [`mu_step`]: `mu = (f mu' - 1) / (f + mu')`.
pub fn mu_unstep(f: &BigInt, next: &BigRational) -> Result<BigRational> {
    let fr = BigRational::from_integer(f.clone());
    let den = &fr + next;
    if den.is_zero() {
        return Err(Error::singular("f + mu' = 0"));
    }
    Ok((fr * next - BigRational::one()) / den)
}

/// Up to `splits` steps from `mu_1 = beta`.
pub fn mu_chain_from(k: u64, beta: &BigRational, splits: usize) -> Result<MuChain> {
    let mut mus = alloc::vec![beta.clone()];
    let mut floors = Vec::with_capacity(splits);
    let mut terminated_early = false;
    for _ in 0..splits {
        let mu = mus.last().unwrap();
        if mu.is_integer() {
            terminated_early = true;
            break;
        }
        let (f, next) = mu_step(mu)?;
        floors.push(f);
        mus.push(next);
    }
    Ok(MuChain {
        k,
        mus,
        floors,
        terminated_early,
    })
}

pub fn mu_chain(k: u64, splits: usize) -> Result<MuChain> {
    let alpha = alpha_for(k)?;
    mu_chain_from(k, &beta::beta_two_step(k, &alpha)?.beta, splits)
}

fn alpha_for(k: u64) -> Result<BigInt> {
    if k < 2 {
        return Err(Error::domain("two-term formulas need k >= 2"));
    }
    Ok(engine::reference_alphas(k as usize)?.get(k as usize).unwrap().clone())
}

fn leading(k: u64, alpha: &BigInt) -> Term {
    Term::new(
        BigInt::one() << (k - 1) as usize,
        BigRational::from_integer(alpha.clone()),
    )
}

/// `2^(k-1) arctan(1/alpha_k) + arctan(1/beta_k)`.
pub fn two_term(k: u64) -> Result<MachinFormula> {
    let alpha = alpha_for(k)?;
    two_term_with(k, &alpha)
}

pub fn two_term_with(k: u64, alpha: &BigInt) -> Result<MachinFormula> {
    let b = beta::beta_two_step(k, alpha)?;
    MachinFormula::new(alloc::vec![leading(k, alpha), Term::new(1, b.beta)])
}

/// The leading term, `splits` integer terms and a closing term.
pub fn expand_multi_term(k: u64, splits: usize) -> Result<MachinFormula> {
    let alpha = alpha_for(k)?;
    let chain = mu_chain_from(k, &beta::beta_two_step(k, &alpha)?.beta, splits)?;
    let mut terms = alloc::vec![leading(k, &alpha)];
    for f in &chain.floors {
        terms.push(Term::new(1, BigRational::from_integer(f.clone())));
    }
    terms.push(Term::new(1, chain.mus.last().unwrap().clone()));
    let mut f = MachinFormula::new(terms)?;
    f.terminated_early = chain.terminated_early;
    Ok(f)
}

/// `omega_1 = W + 1`, `omega_j = (omega_(j-1) - 1)^2 + omega_(j-1) + 1`,
/// and the last `omega_n = (omega_(n-1) - 1)^2 + omega_(n-1)`, so that
/// `arctan(1/W) = sum arctan(1/omega_j)`.
pub fn expand_terminal(omega_0: &BigRational, n: usize) -> Result<Vec<BigInt>> {
    if n < 2 {
        return Err(Error::domain("terminal expansion needs N >= 2"));
    }
    if !omega_0.is_integer() || !omega_0.is_positive() {
        return Err(Error::domain("terminal expansion needs a positive integer"));
    }
    let mut out = Vec::with_capacity(n);
    let mut w = omega_0.to_integer() + 1u32;
    out.push(w.clone());
    for j in 2..=n {
        let sq = (&w - 1u32) * (&w - 1u32);
        w = if j == n { sq + &w } else { sq + &w + 1u32 };
        out.push(w.clone());
    }
    Ok(out)
}

/// `|sum c arctan(1/r) - pi/4|`, plus a few ulps of working precision.
pub fn verify_formula(f: &MachinFormula, ctx: &PrecisionContext) -> Result<FixedReal> {
    if f.terms.iter().any(|t| t.reciprocal.is_zero()) {
        return Err(Error::domain("reciprocal must be nonzero"));
    }
    // large coefficients multiply the kernel error
    let extra = f.terms.iter().map(|t| t.coeff.bits()).max().unwrap_or(0) as u32 + 8;
    let inner = ctx.resized(ctx.bits() + extra)?;
    let w = inner.working();
    let mut sum = FixedReal::zero(w);
    for t in &f.terms {
        let a = trig::arctan_ratio(&t.reciprocal.recip(), &inner);
        sum = &sum + &a.mul_round(&FixedReal::from_int(t.coeff.clone(), w), w, Rounding::Nearest);
    }
    let quarter = engine::reference_pi(&inner)?.mul_pow2(-2);
    // a few ulps of slack so that a lucky cancellation never reads as zero
    let slack = FixedReal::from_int(1, 8).mul_pow2(4 - w as i64);
    Ok((&sum - &quarter).abs().add_round(&slack, w, Rounding::Up))
}

/// Floor of `log2` of a residual; `None` for an exact zero.
pub fn residual_log2(r: &FixedReal) -> Option<i64> {
    r.top_bit().map(|t| t - 1)
}

pub fn machin() -> MachinFormula {
    two_term_with(3, &BigInt::from(5)).unwrap()
}

pub fn hermann() -> MachinFormula {
    two_term_with(2, &BigInt::from(2)).unwrap()
}

/// `64 arctan(1/81) + arctan(1/beta_7)`.
pub fn k7() -> MachinFormula {
    two_term_with(7, &BigInt::from(81)).unwrap()
}

/// `8 arctan(1/10)`, five integer splits and the integer closing term.
pub fn seven_term() -> Result<MachinFormula> {
    expand_multi_term(4, 5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn classic_two_term() {
        let h = hermann();
        assert_eq!(h.terms[0], Term::new(2, int(2)));
        assert_eq!(h.terms[1], Term::new(1, int(-7)));
        assert_eq!(h.render(), "pi/4 = 2 arctan(1/2) - arctan(1/7)");
        assert_eq!(machin().render(), "pi/4 = 4 arctan(1/5) - arctan(1/239)");
        assert_eq!(two_term(3).unwrap(), machin());
    }

    #[test]
    fn k4_chain() {
        let f = expand_multi_term(4, 0).unwrap();
        assert_eq!(f.render(), "pi/4 = 8 arctan(1/10) - arctan(1758719/147153121)");
        let f = expand_multi_term(4, 2).unwrap();
        assert_eq!(f.terms[1].reciprocal, int(-84));
        assert_eq!(f.terms[2].reciprocal, int(-21342));
        assert_eq!(f.terms[3].reciprocal, ratio(-263843055464261i64, 266167));
        let f = expand_multi_term(4, 1).unwrap();
        assert_eq!(f.terms[2].reciprocal, ratio(-12362620883i64, 579275));
    }

    #[test]
    fn chain_inverts() {
        let c = mu_chain(4, 5).unwrap();
        for m in 0..c.floors.len() {
            assert_eq!(mu_unstep(&c.floors[m], &c.mus[m + 1]).unwrap(), c.mus[m]);
        }
        assert!(c.mus.last().unwrap().is_integer());
        assert!(!c.terminated_early);
        assert!(mu_chain(4, 6).unwrap().terminated_early);
    }

    #[test]
    fn terminal_examples() {
        let w = expand_terminal(&int(10), 2).unwrap();
        assert_eq!(w, [BigInt::from(11), BigInt::from(111)]);
        let w = expand_terminal(&int(10), 3).unwrap();
        assert_eq!(w, [BigInt::from(11), BigInt::from(112), BigInt::from(12433)]);
        assert!(expand_terminal(&int(10), 1).is_err());
        assert!(expand_terminal(&ratio(1, 2), 3).is_err());
        // arctan(1/2) = arctan(1/3) + arctan(1/7)
        assert_eq!(expand_terminal(&int(2), 2).unwrap(), [BigInt::from(3), BigInt::from(7)]);
    }

    #[test]
    fn small_formulas_verify() {
        let c = PrecisionContext::new(128).unwrap();
        for f in [machin(), hermann()] {
            let r = verify_formula(&f, &c).unwrap();
            assert!(residual_log2(&r).is_none_or(|e| e < -120));
        }
        let wrong = MachinFormula::new(alloc::vec![Term::new(4, int(5))]).unwrap();
        assert!(residual_log2(&verify_formula(&wrong, &c).unwrap()).unwrap() > -10);
        assert!(MachinFormula::new(alloc::vec![Term::new(1, int(0))]).is_err());
    }
}
