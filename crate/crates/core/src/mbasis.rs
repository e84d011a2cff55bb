//! The monomial basis `m_{λ,μ}` of `Λ±` and its transition to power sums.
//!
//! `m_{λ,μ}` is the element whose image in `N` variables is the monomial
//! symmetric Laurent polynomial with exponents `(λ, 0, …, 0, -μ reversed)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{rat, BigRational, Coeff, ParamPoly, Params, RatFunc};
use crate::error::{Error, Result};
use crate::partitions::{BiPartition, Partition};
use crate::psym::{PMonomial, SymFunc};

/// Coefficients in the monomial basis; polynomials in `p0` only.
pub type MExpansion = BTreeMap<BiPartition, ParamPoly>;

type ProductCache = RwLock<HashMap<BiPartition, Arc<MExpansion>>>;
type BasisCache = RwLock<HashMap<BiPartition, Arc<SymFunc<RatFunc>>>>;

fn product_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `(p0 - a)(p0 - a - 1)⋯`, `len` factors.
fn falling(a: u32, len: u32) -> ParamPoly {
    let mut out = ParamPoly::one();
    for t in 0..len {
        out = out * (ParamPoly::p0() - ParamPoly::from_i64((a + t) as i64));
    }
    out
}

fn factorial(n: u32) -> BigRational {
    (1..=n as i64).fold(rat(1), |acc, i| acc * rat(i))
}

/// Expansion of `p_{α_1}⋯p_{α_r} p_{-β_1}⋯p_{-β_s}` in the monomial basis.
///
/// Each set partition of the signed parts merges its blocks into single
/// variables; blocks of net exponent zero occupy distinct further variables,
/// which gives the falling factorial in `p0`.
pub fn p_product_to_m(alpha: &Partition, beta: &Partition) -> Arc<MExpansion> {
    let key = BiPartition::new(alpha.clone(), beta.clone());
    if let Some(hit) = product_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let parts: Vec<i64> = alpha
        .parts()
        .iter()
        .map(|&a| a as i64)
        .chain(beta.parts().iter().map(|&b| -(b as i64)))
        .collect();
    let mut out = MExpansion::new();
    let mut labels = vec![0usize; parts.len()];
    set_partitions(&mut labels, 0, 0, &mut |labels, nblocks| {
        let mut sums = vec![0i64; nblocks];
        for (x, &l) in labels.iter().enumerate() {
            sums[l] += parts[x];
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zeros = 0u32;
        for s in sums {
            match s.signum() {
                1 => pos.push(s as u32),
                -1 => neg.push((-s) as u32),
                _ => zeros += 1,
            }
        }
        let nonzero = (pos.len() + neg.len()) as u32;
        let lam = Partition::from_unsorted(pos);
        let mu = Partition::from_unsorted(neg);
        let mut mult = rat(1);
        for p in [&lam, &mu] {
            let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
            for &v in p.parts() {
                *counts.entry(v).or_default() += 1;
            }
            for c in counts.values() {
                mult *= factorial(*c);
            }
        }
        let coeff = falling(nonzero, zeros).scale(&mult);
        let entry = out
            .entry(BiPartition::new(lam, mu))
            .or_insert_with(ParamPoly::zero);
        *entry = &*entry + &coeff;
    });
    out.retain(|_, c| !c.is_zero());
    let out = Arc::new(out);
    product_cache().write().unwrap().insert(key, out.clone());
    out
}

/// Enumerates set partitions as restricted growth strings.
fn set_partitions(
    labels: &mut Vec<usize>,
    pos: usize,
    nblocks: usize,
    visit: &mut dyn FnMut(&[usize], usize),
) {
    if pos == labels.len() {
        visit(labels, nblocks);
        return;
    }
    for l in 0..=nblocks {
        labels[pos] = l;
        let n = if l == nblocks { nblocks + 1 } else { nblocks };
        set_partitions(labels, pos + 1, n, visit);
    }
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Result<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| rat((i == j) as i64)).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !num_traits::Zero::is_zero(&a[r][col]))
            .ok_or(Error::Singular("monomial transition"))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || num_traits::Zero::is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                a[r][j] -= x;
                inv[r][j] -= y;
            }
        }
    }
    Ok(inv)
}

fn pairs_of_sizes(d: u32, e: u32) -> Vec<BiPartition> {
    let mus = Partition::all_of_size(e);
    Partition::all_of_size(d)
        .into_iter()
        .flat_map(|l| {
            mus.iter()
                .map(move |m| BiPartition::new(l.clone(), m.clone()))
        })
        .collect()
}

fn poly_coeff(p: &ParamPoly) -> RatFunc {
    RatFunc::from_poly(p.clone())
}

/// `m_{λ,μ}` in power sums. Coefficients are integer polynomials in `p0`.
///
/// Solved one bidegree at a time: the block of products of the same
/// bidegree is a rational matrix, and everything below is already known.
pub fn m_to_p(b: &BiPartition) -> Result<Arc<SymFunc<RatFunc>>> {
    if let Some(hit) = basis_cache().read().unwrap().get(b) {
        return Ok(hit.clone());
    }
    let (d, e) = (b.lam.size(), b.mu.size());
    let top = pairs_of_sizes(d, e);
    let index: HashMap<&BiPartition, usize> = top.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let n = top.len();
    let mut block = vec![vec![rat(0); n]; n];
    let mut residuals = Vec::with_capacity(n);
    for (row, ab) in top.iter().enumerate() {
        let exp = p_product_to_m(&ab.lam, &ab.mu);
        let mut r = SymFunc::monomial(PMonomial::from_partitions(&ab.lam, &ab.mu));
        for (nu, c) in exp.iter() {
            match index.get(nu) {
                Some(&col) => {
                    block[row][col] = c
                        .as_constant()
                        .ok_or(Error::Singular("monomial transition"))?;
                }
                None => {
                    let lower = m_to_p(nu)?;
                    r = &r - &lower.scale(&poly_coeff(c));
                }
            }
        }
        residuals.push(r);
    }
    let inv = invert(block)?;
    let mut computed = Vec::with_capacity(n);
    for (t, nu) in top.iter().enumerate() {
        let mut f = SymFunc::zero();
        for (row, r) in residuals.iter().enumerate() {
            if !num_traits::Zero::is_zero(&inv[t][row]) {
                f = &f + &r.scale(&RatFunc::from_rational(inv[t][row].clone()));
            }
        }
        computed.push((nu.clone(), Arc::new(f)));
    }
    let mut cache = basis_cache().write().unwrap();
    for (nu, f) in computed {
        cache.entry(nu).or_insert(f);
    }
    Ok(cache[b].clone())
}

/// `m_{λ,μ}` specialized to a coefficient field.
pub fn m_to_p_in<C: Coeff>(b: &BiPartition, params: &Params<C>) -> Result<SymFunc<C>> {
    m_to_p(b)?.specialize(params)
}

/// Coefficients of `f` in the monomial basis. `f` must not involve `w`.
pub fn p_to_m<C: Coeff>(f: &SymFunc<C>, params: &Params<C>) -> Result<BTreeMap<BiPartition, C>> {
    let mut out: BTreeMap<BiPartition, C> = BTreeMap::new();
    let mut embedded: HashMap<ParamPoly, C> = HashMap::new();
    for (m, c) in f.iter() {
        if m.wexp() > 0 {
            return Err(Error::Domain {
                op: "p_to_m",
                what: "an element involving w".into(),
            });
        }
        let (alpha, beta) = m.to_partitions();
        for (nu, poly) in p_product_to_m(&alpha, &beta).iter() {
            let x = match embedded.get(poly) {
                Some(x) => x.clone(),
                None => {
                    let x = params.embed(&poly_coeff(poly))?;
                    embedded.insert(poly.clone(), x.clone());
                    x
                }
            };
            let term = c.clone() * &x;
            let slot = out.entry(nu.clone()).or_insert_with(C::zero);
            *slot = slot.clone() + term;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `Σ c_ν m_ν` in power sums.
pub fn m_combination<C: Coeff>(
    coeffs: &BTreeMap<BiPartition, C>,
    params: &Params<C>,
) -> Result<SymFunc<C>> {
    let mut out = SymFunc::zero();
    for (nu, c) in coeffs {
        out = &out + &m_to_p_in(nu, params)?.scale(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(l: &[u32], m: &[u32]) -> BiPartition {
        BiPartition::of(l, m)
    }

    fn sym(s: &str) -> SymFunc<RatFunc> {
        s.parse().unwrap()
    }

    #[test]
    fn product_expansions() {
        let one = |l: &[u32], m: &[u32]| {
            p_product_to_m(
                &Partition::new(l.to_vec()).unwrap(),
                &Partition::new(m.to_vec()).unwrap(),
            )
        };
        let e = one(&[1], &[1]);
        assert_eq!(e.len(), 2);
        assert_eq!(e[&bp(&[1], &[1])], ParamPoly::one());
        assert_eq!(e[&bp(&[], &[])], ParamPoly::p0());

        let e = one(&[2], &[1]);
        assert_eq!(e.len(), 2);
        assert_eq!(e[&bp(&[2], &[1])], ParamPoly::one());
        assert_eq!(e[&bp(&[1], &[])], ParamPoly::one());

        let e = one(&[1, 1], &[]);
        assert_eq!(e[&bp(&[2], &[])], ParamPoly::one());
        assert_eq!(e[&bp(&[1, 1], &[])], ParamPoly::from_i64(2));
    }

    #[test]
    fn monomials_in_power_sums() {
        assert_eq!(*m_to_p(&bp(&[3], &[1])).unwrap(), sym("p_3*p_-1 - p_2"));
        assert_eq!(*m_to_p(&bp(&[2], &[2])).unwrap(), sym("p_2*p_-2 - p0"));
        assert_eq!(
            *m_to_p(&bp(&[1, 1], &[1])).unwrap(),
            sym("1/2*(p_1^2 - p_2)*p_-1 - (p0 - 1)*p_1")
        );
    }

    #[test]
    fn inverse_transition() {
        let params = Params::symbolic();
        let got = p_to_m(&sym("p_1*p_-1"), &params).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[&bp(&[1], &[1])], RatFunc::one());
        assert_eq!(got[&bp(&[], &[])], RatFunc::p0());
        let got = p_to_m(&SymFunc::one(), &params).unwrap();
        assert_eq!(got[&BiPartition::empty()], RatFunc::one());
        assert!(p_to_m(&SymFunc::<RatFunc>::w(), &params).is_err());
    }

    #[test]
    fn round_trip_small() {
        let params = Params::symbolic();
        for b in BiPartition::all_up_to(3, 3) {
            let m = m_to_p(&b).unwrap();
            let back = p_to_m(&m, &params).unwrap();
            assert_eq!(back.len(), 1, "{b}");
            assert_eq!(back[&b], RatFunc::one(), "{b}");
        }
    }
}
