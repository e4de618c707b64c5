mod common;

use machin_core::formula::*;
use machin_core::numeric::{BigInt, BigRational, PrecisionContext};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

const OMEGA: &str = "117573868168175352930277752844194126767991915008537018836932014293678271636885792397";

/// Exact Gaussian integer; shares nothing with the library's complex type.
#[derive(Clone, Debug, PartialEq)]
struct Gi(BigInt, BigInt);

impl Gi {
    fn mul(&self, o: &Gi) -> Gi {
        Gi(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    fn pow(&self, mut e: u64) -> Gi {
        let mut acc = Gi(BigInt::one(), BigInt::zero());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
}

/// `sum c arctan(1/r) = pi/4 (mod 2 pi)` iff `prod (|p| + sgn(p) q i)^c` has `re = im > 0`.
fn gaussian_product_is_eighth_turn(f: &MachinFormula) -> bool {
    let mut acc = Gi(BigInt::one(), BigInt::zero());
    for t in &f.terms {
        let (p, q) = (t.reciprocal.numer(), t.reciprocal.denom());
        let im = if p.is_negative() { -q } else { q.clone() };
        let z = Gi(p.abs(), im);
        let c = t.coeff.to_u64().expect("non-negative coefficients");
        acc = acc.mul(&z.pow(c));
        // keep the operands small; a common real factor leaves the angle alone
        let g = acc.0.gcd(&acc.1);
        acc = Gi(&acc.0 / &g, &acc.1 / &g);
    }
    acc.0 == acc.1 && acc.0.is_positive()
}

fn below(f: &MachinFormula, bits: u32, bound: i64) -> bool {
    let ctx = PrecisionContext::new(bits).unwrap();
    residual_log2(&verify_formula(f, &ctx).unwrap()).is_none_or(|e| e < bound)
}

fn int_reciprocals(f: &MachinFormula) -> Vec<String> {
    f.terms.iter().map(|t| t.reciprocal.to_string()).collect()
}

#[test]
fn named_formulas_verify() {
    assert!(below(&machin(), 128, -120));
    assert!(below(&hermann(), 128, -120));
    assert!(below(&k7(), 1024, -1000));
    assert!(below(&seven_term().unwrap(), 1024, -1000));
}

#[test]
fn seven_term_reciprocals() {
    let f = seven_term().unwrap();
    assert_eq!(f.len(), 7);
    assert!(f.terms.iter().all(|t| t.reciprocal.is_integer()));
    let r = int_reciprocals(&f);
    assert_eq!(r[0], "10");
    assert_eq!(r[1], "-84");
    assert_eq!(r[2], "-21342");
    assert_eq!(r[3], "-991268848");
    assert_eq!(r[4], "-193018008592515208050");
    assert_eq!(r[5], "-197967899896401851763240424238758988350338");
    assert_eq!(r[5].len() - 1, 42);
    let omega = r[6].trim_start_matches('-');
    assert_eq!(omega, OMEGA);
    assert_eq!(omega.len(), 84);
    assert!(omega.starts_with("11757386816817535293"));
    assert!(omega.ends_with("6885792397"));
}

#[test]
fn exact_angle_oracle() {
    for f in [machin(), hermann(), k7(), seven_term().unwrap()] {
        assert!(gaussian_product_is_eighth_turn(&f), "{}", f.render());
    }
    for k in 2..=10 {
        assert!(gaussian_product_is_eighth_turn(&two_term(k).unwrap()), "k = {k}");
    }
    let broken = MachinFormula::new(vec![
        Term::new(4, BigRational::from_integer(5.into())),
        Term::new(1, BigRational::from_integer((-238).into())),
    ])
    .unwrap();
    assert!(!gaussian_product_is_eighth_turn(&broken));
}

#[test]
fn split_prefixes_telescope() {
    // every truncation of the chain is itself an identity
    let full = seven_term().unwrap();
    for m in 0..=5 {
        let f = expand_multi_term(4, m).unwrap();
        assert_eq!(f.len(), m + 2);
        assert_eq!(f.terms[..m + 1], full.terms[..m + 1]);
        assert!(gaussian_product_is_eighth_turn(&f), "m = {m}");
        assert!(below(&f, 512, -500), "m = {m}");
    }
}

#[test]
fn closing_terms_shrink() {
    let c = mu_chain(4, 5).unwrap();
    for m in 0..c.floors.len() {
        let next = c.mus[m + 1].recip().abs();
        let f = BigRational::from_integer(c.floors[m].clone()).recip();
        assert!(next < &f * &f * BigRational::from_integer(2.into()), "m = {m}");
    }
}

#[test]
fn terminal_split_is_exact() {
    let f = seven_term().unwrap();
    for n in 2..=4 {
        let g = f.with_terminal_split(n).unwrap();
        assert_eq!(g.len(), 6 + n);
        assert!(gaussian_product_is_eighth_turn(&g), "n = {n}");
    }
    let g = f.with_terminal_split(2).unwrap();
    assert!(below(&g, 1024, -1000));
}

proptest! {
    #[test]
    fn terminal_expansion_identity(w in 1i64..5000, n in 2usize..5) {
        let omegas = expand_terminal(&BigRational::from_integer(w.into()), n).unwrap();
        prop_assert_eq!(omegas.len(), n);
        // arctan(1/w) - sum arctan(1/omega_j) = 0 exactly
        let mut acc = Gi(BigInt::from(w), BigInt::from(-1));
        for o in &omegas {
            acc = acc.mul(&Gi(o.clone(), BigInt::one()));
        }
        prop_assert!(acc.1.is_zero() && acc.0.is_positive());
    }

    #[test]
    fn chain_round_trip(k in 2u64..=10, m in 0usize..4) {
        let c = mu_chain(k, m).unwrap();
        for i in 0..c.floors.len() {
            prop_assert_eq!(mu_unstep(&c.floors[i], &c.mus[i + 1]).unwrap(), c.mus[i].clone());
        }
    }
}
