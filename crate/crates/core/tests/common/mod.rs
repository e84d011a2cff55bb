#![allow(dead_code)]

use std::collections::BTreeMap;

use cms_laurent::arith::Exp;
use cms_laurent::finite::{phi_n, FiniteLaurentPoly};
use cms_laurent::mbasis::{m_combination, m_to_p, p_to_m};
use cms_laurent::partitions::dominance_leq;
use cms_laurent::{
    BiPartition, BigRational, PMonomial, ParamPoly, Params, Partition, RatFunc, SymFunc,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type F = SymFunc<RatFunc>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn small_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 0..4).prop_map(|ts| {
        ParamPoly::from_terms(ts.into_iter().map(|((a, b), c)| (Exp::new(a, b), q(c))))
    })
}

pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), small_poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { ParamPoly::one() } else { d };
        RatFunc::new(n, d).unwrap()
    })
}

fn generator_index() -> impl Strategy<Value = i32> {
    prop_oneof![-3i32..=-1, 1i32..=3]
}

pub fn pmonomial() -> impl Strategy<Value = PMonomial> {
    prop::collection::vec((generator_index(), 1u32..3), 0..3)
        .prop_map(|pairs| PMonomial::from_pairs(pairs, 0).unwrap())
}

/// Monomials of bidegree at most `(3, 3)`.
pub fn small_pmonomial() -> impl Strategy<Value = PMonomial> {
    (partition(3), partition(3)).prop_map(|(a, b)| PMonomial::from_partitions(&a, &b))
}

/// A `w`-free element with a few terms and small integer or `k, p0`
/// polynomial coefficients.
pub fn symfunc() -> impl Strategy<Value = F> {
    terms(pmonomial())
}

pub fn small_symfunc() -> impl Strategy<Value = F> {
    terms(small_pmonomial())
}

fn terms(mono: impl Strategy<Value = PMonomial>) -> impl Strategy<Value = F> {
    prop::collection::vec((mono, small_poly()), 0..4)
        .prop_map(|ts| F::from_terms(ts.into_iter().map(|(m, c)| (m, RatFunc::from_poly(c)))))
}

pub fn partition(max_size: u32) -> impl Strategy<Value = Partition> {
    prop::sample::select(Partition::all_up_to(max_size))
}

pub fn bipartition(max_size: u32) -> impl Strategy<Value = BiPartition> {
    (partition(max_size), partition(max_size)).prop_map(|(l, m)| BiPartition::new(l, m))
}

pub fn field_laws(a: &RatFunc, b: &RatFunc, c: &RatFunc) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert!((a + &(-a)).is_zero());
    if !b.is_zero() {
        prop_assert_eq!((a * b).checked_div(b).unwrap(), a.clone());
        prop_assert!((b * &b.inv().unwrap()).is_one());
    }
    Ok(())
}

/// `star` is an involutive ring automorphism.
pub fn star_laws(f: &F, g: &F) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.star().star(), f.clone());
    prop_assert_eq!((f * g).star(), &f.star() * &g.star());
    prop_assert_eq!((f + g).star(), &f.star() + &g.star());
    Ok(())
}

/// `φ_N` is a ring homomorphism, symmetric, and turns `star` into
/// `z ↦ z⁻¹`.
pub fn phi_laws(f: &F, g: &F, n: usize) -> Result<(), TestCaseError> {
    let pf = phi_n(f, n).unwrap();
    let pg = phi_n(g, n).unwrap();
    prop_assert_eq!(phi_n(&(f * g), n).unwrap(), &pf * &pg);
    prop_assert_eq!(phi_n(&(f + g), n).unwrap(), &pf + &pg);
    prop_assert_eq!(phi_n(&f.star(), n).unwrap(), pf.invert_vars());
    prop_assert!(pf.is_symmetric());
    Ok(())
}

/// `p_to_m` inverts `m_to_p`, and `m_combination` inverts `p_to_m`.
pub fn round_trip(b: &BiPartition, f: &F) -> Result<(), TestCaseError> {
    let params = Params::symbolic();
    let m = m_to_p(b).unwrap();
    let back = p_to_m(&m, &params).unwrap();
    prop_assert_eq!(back, BTreeMap::from([(b.clone(), RatFunc::one())]));
    let coeffs = p_to_m(f, &params).unwrap();
    prop_assert_eq!(m_combination(&coeffs, &params).unwrap(), f.clone());
    Ok(())
}

/// `φ_N(m_{λ,μ}) = m_χ` with `χ = (λ, 0, …, 0, -μ reversed)`.
pub fn phi_of_monomial(b: &BiPartition, extra: usize) -> Result<(), TestCaseError> {
    let n = b.lam.len() + b.mu.len() + extra;
    prop_assume!(n > 0);
    let mut chi: Vec<i32> = b.lam.parts().iter().map(|&x| x as i32).collect();
    chi.resize(n - b.mu.len(), 0);
    chi.extend(b.mu.parts().iter().rev().map(|&x| -(x as i32)));
    let got = phi_n(&m_to_p(b).unwrap(), n).unwrap();
    let want = FiniteLaurentPoly::<RatFunc>::monomial_symmetric(&chi);
    prop_assert_eq!(got, want);
    Ok(())
}

pub fn dominance_laws(
    a: &BiPartition,
    b: &BiPartition,
    c: &BiPartition,
) -> Result<(), TestCaseError> {
    prop_assert!(dominance_leq(a, a));
    if dominance_leq(a, b) && dominance_leq(b, a) {
        prop_assert_eq!(a, b);
    }
    if dominance_leq(a, b) && dominance_leq(b, c) {
        prop_assert!(dominance_leq(a, c));
    }
    Ok(())
}

/// Reflexivity, antisymmetry and transitivity over every triple of pairs
/// with `|λ|, |μ| ≤ max`; returns the number of triples examined.
pub fn dominance_exhaustive(max: u32) -> Result<usize, String> {
    let all = BiPartition::all_up_to(max, max);
    let mut by_weight: BTreeMap<i64, Vec<&BiPartition>> = BTreeMap::new();
    for b in &all {
        by_weight.entry(b.weight()).or_default().push(b);
    }
    let mut count = 0;
    for class in by_weight.values() {
        for a in class {
            for b in class {
                for c in class {
                    count += 1;
                    dominance_laws(a, b, c).map_err(|e| format!("{a} {b} {c}: {e}"))?;
                }
            }
        }
    }
    Ok(count)
}
