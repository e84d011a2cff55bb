//! Laurent symmetric functions: polynomials in the free generators `p_i`
//! (`i ≠ 0`) and optionally the extra variable `w`, with coefficients in a
//! [`Coeff`] field. The parameter `p0` only ever lives in coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational, Coeff, Params, RatFunc};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// A monomial `Π p_i^{e_i} · w^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PMonomial {
    exps: Vec<(i32, u32)>,
    wexp: u32,
}

impl PMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn w() -> Self {
        PMonomial {
            exps: Vec::new(),
            wexp: 1,
        }
    }

    pub fn generator(i: i32) -> Self {
        assert!(i != 0, "p_0 is a parameter, not a generator");
        PMonomial {
            exps: vec![(i, 1)],
            wexp: 0,
        }
    }

    /// Builds a monomial from `(index, exponent)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, u32)>, wexp: u32) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, e) in pairs {
            if i == 0 {
                return Err(Error::Invalid("p_0 is not a generator".into()));
            }
            if e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        Ok(PMonomial {
            exps: map.into_iter().collect(),
            wexp,
        })
    }

    /// `p_{α_1}⋯p_{α_r} · p_{-β_1}⋯p_{-β_s}`.
    pub fn from_partitions(alpha: &Partition, beta: &Partition) -> Self {
        let pairs = alpha
            .parts()
            .iter()
            .map(|&a| (a as i32, 1))
            .chain(beta.parts().iter().map(|&b| (-(b as i32), 1)));
        Self::from_pairs(pairs, 0).expect("partition parts are nonzero")
    }

    /// The inverse of [`PMonomial::from_partitions`]; ignores `w`.
    pub fn to_partitions(&self) -> (Partition, Partition) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for &(i, e) in &self.exps {
            let target = if i > 0 { &mut pos } else { &mut neg };
            target.extend(std::iter::repeat_n(i.unsigned_abs(), e as usize));
        }
        (Partition::from_unsorted(pos), Partition::from_unsorted(neg))
    }

    /// Sorted `(index, exponent)` pairs.
    pub fn exps(&self) -> &[(i32, u32)] {
        &self.exps
    }

    pub fn wexp(&self) -> u32 {
        self.wexp
    }

    pub fn with_wexp(&self, wexp: u32) -> Self {
        PMonomial {
            exps: self.exps.clone(),
            wexp,
        }
    }

    pub fn exp_of(&self, i: i32) -> u32 {
        match self.exps.binary_search_by_key(&i, |&(j, _)| j) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty() && self.wexp == 0
    }

    /// Number of generator factors, counted with multiplicity (`w` excluded).
    pub fn multiplicity(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// `(Σ_{i>0} i e_i, Σ_{i<0} |i| e_i)`.
    pub fn bidegree(&self) -> (u32, u32) {
        let mut d = (0, 0);
        for &(i, e) in &self.exps {
            if i > 0 {
                d.0 += i as u32 * e;
            } else {
                d.1 += i.unsigned_abs() * e;
            }
        }
        d
    }

    pub fn net_degree(&self) -> i64 {
        let (a, b) = self.bidegree();
        a as i64 - b as i64
    }

    pub fn total_degree(&self) -> u32 {
        let (a, b) = self.bidegree();
        a + b
    }

    pub fn has_negative(&self) -> bool {
        self.exps.first().is_some_and(|&(i, _)| i < 0)
    }

    pub fn mul(&self, other: &PMonomial) -> PMonomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        out.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        PMonomial {
            exps: out,
            wexp: self.wexp + other.wexp,
        }
    }

    /// Multiplies by `p_i`; `None` when `i = 0`, where the caller must use
    /// the parameter `p0` instead.
    pub fn times_gen(&self, i: i32) -> Option<PMonomial> {
        (i != 0).then(|| self.mul(&PMonomial::generator(i)))
    }

    /// Removes one factor `p_i`, if present.
    pub fn without_gen(&self, i: i32) -> Option<PMonomial> {
        let pos = self.exps.binary_search_by_key(&i, |&(j, _)| j).ok()?;
        let mut exps = self.exps.clone();
        if exps[pos].1 == 1 {
            exps.remove(pos);
        } else {
            exps[pos].1 -= 1;
        }
        Some(PMonomial {
            exps,
            wexp: self.wexp,
        })
    }

    /// Negates every generator index.
    pub fn star(&self) -> PMonomial {
        let mut exps: Vec<_> = self.exps.iter().map(|&(i, e)| (-i, e)).collect();
        exps.reverse();
        PMonomial {
            exps,
            wexp: self.wexp,
        }
    }

    /// `self` divides `other`.
    pub fn divides(&self, other: &PMonomial) -> bool {
        self.wexp <= other.wexp && self.exps.iter().all(|&(i, e)| other.exp_of(i) >= e)
    }

    /// `other / self`, assuming [`PMonomial::divides`].
    pub fn quotient_of(&self, other: &PMonomial) -> PMonomial {
        let exps = other
            .exps
            .iter()
            .filter_map(|&(i, e)| {
                let r = e - self.exp_of(i);
                (r > 0).then_some((i, r))
            })
            .collect();
        PMonomial {
            exps,
            wexp: other.wexp - self.wexp,
        }
    }

    /// Graded lexicographic comparison, compatible with multiplication.
    pub fn grlex_cmp(&self, other: &PMonomial) -> Ordering {
        let da = self.multiplicity() + self.wexp;
        let db = other.multiplicity() + other.wexp;
        da.cmp(&db)
            .then_with(|| self.wexp.cmp(&other.wexp))
            .then_with(|| {
                let mut keys: Vec<i32> = self
                    .exps
                    .iter()
                    .chain(other.exps.iter())
                    .map(|&(i, _)| i)
                    .collect();
                keys.sort_unstable();
                keys.dedup();
                for i in keys {
                    let c = self.exp_of(i).cmp(&other.exp_of(i));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }

    /// Every monomial in the `p_i` (no `w`) of total degree at most `d`;
    /// with `laurent = false` only positive indices are used.
    pub fn basis_up_to(d: u32, laurent: bool) -> Vec<PMonomial> {
        let mut out = Vec::new();
        for a in 0..=d {
            let max_b = if laurent { d - a } else { 0 };
            for b in 0..=max_b {
                for alpha in Partition::all_of_size(a) {
                    for beta in Partition::all_of_size(b) {
                        out.push(PMonomial::from_partitions(&alpha, &beta));
                    }
                }
            }
        }
        out
    }

    fn sort_key(&self) -> (u32, i64, u32, u32, &[(i32, u32)]) {
        (
            self.wexp,
            self.net_degree(),
            self.total_degree(),
            self.multiplicity(),
            &self.exps,
        )
    }
}

impl Ord for PMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for PMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut factors: Vec<String> = self
            .exps
            .iter()
            .rev()
            .map(|&(i, e)| {
                if e == 1 {
                    format!("p_{i}")
                } else {
                    format!("p_{i}^{e}")
                }
            })
            .collect();
        match self.wexp {
            0 => {}
            1 => factors.push("w".into()),
            n => factors.push(format!("w^{n}")),
        }
        write!(f, "{}", factors.join("*"))
    }
}

/// A finite linear combination of [`PMonomial`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFunc<C> {
    terms: BTreeMap<PMonomial, C>,
}

impl<C: Coeff> Default for SymFunc<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> SymFunc<C> {
    pub fn zero() -> Self {
        SymFunc {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(PMonomial::one(), c)
    }

    pub fn monomial(m: PMonomial) -> Self {
        Self::term(m, C::one())
    }

    pub fn term(m: PMonomial, c: C) -> Self {
        let mut f = Self::zero();
        f.add_term(m, c);
        f
    }

    pub fn generator(i: i32) -> Self {
        Self::monomial(PMonomial::generator(i))
    }

    pub fn w() -> Self {
        Self::monomial(PMonomial::w())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PMonomial, C)>) -> Self {
        let mut f = Self::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: PMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<PMonomial, C> {
        &self.terms
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&PMonomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The value as a field element, when `self` is a constant.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.clone() * c))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The involution `p_i ↦ p_{-i}`, fixing `w` and coefficients.
    pub fn star(&self) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.star(), c.clone()))
                .collect(),
        }
    }

    /// The linear map `p_a ↦ t·p_a` for every generator.
    pub fn scale_generators(&self, t: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut factor = C::one();
            for _ in 0..m.multiplicity() {
                factor = factor * t;
            }
            out.add_term(m.clone(), c.clone() * &factor);
        }
        out
    }

    /// Multiplies by `w^n`.
    pub fn times_w(&self, n: u32) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with_wexp(m.wexp() + n), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<SymFunc<D>> {
        let mut out = SymFunc::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// No negative indices and no `w`.
    pub fn in_plus(&self) -> bool {
        self.terms
            .keys()
            .all(|m| !m.has_negative() && m.wexp() == 0)
    }

    pub fn has_w(&self) -> bool {
        self.terms.keys().any(|m| m.wexp() > 0)
    }

    /// The leading term in the graded lexicographic order.
    pub fn grlex_leading(&self) -> Option<(&PMonomial, &C)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    /// Exact quotient in the polynomial ring, `None` if `d` does not divide.
    pub fn exact_div(&self, d: &SymFunc<C>) -> Result<Option<SymFunc<C>>> {
        let (dm, dc) = match d.grlex_leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.grlex_leading() {
            if !dm.divides(rm) {
                return Ok(None);
            }
            let qm = dm.quotient_of(rm);
            let qc = rc.checked_div(&dc)?;
            let t = Self::term(qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Ok(Some(quot))
    }

    /// Largest total degree of a term.
    pub fn max_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }
}

impl SymFunc<RatFunc> {
    /// The twisted map `c(k, p0)·m ↦ c(1/k, p0)·k^ℓ·m`, where `ℓ` counts the
    /// generator factors of `m`.
    pub fn theta(&self) -> Result<Self> {
        let kinv = RatFunc::k().inv()?;
        let p0 = RatFunc::p0();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let twisted = c.substitute(&kinv, &p0)?;
            let factor = RatFunc::k().pow(m.multiplicity() as i32)?;
            out.add_term(m.clone(), twisted * factor);
        }
        Ok(out)
    }

    /// Specializes every coefficient into the field of `params`.
    pub fn specialize<C: Coeff>(&self, params: &Params<C>) -> Result<SymFunc<C>> {
        self.map_coeffs(|c| params.embed(c))
    }

    /// Substitutes `k ↦ k_img`, `p0 ↦ p0_img` in every coefficient.
    pub fn substitute(&self, k_img: &RatFunc, p0_img: &RatFunc) -> Result<Self> {
        self.map_coeffs(|c| c.substitute(k_img, p0_img))
    }

    pub fn depends_on_p0(&self) -> bool {
        self.terms.values().any(|c| c.depends_on_p0())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl FromStr for SymFunc<RatFunc> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_symfunc(s)
    }
}

impl<C: Coeff> fmt::Display for SymFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let neg = q < num_traits::Zero::zero();
                    let abs = if neg { -q } else { q };
                    let one: crate::arith::BigRational = num_traits::One::one();
                    let body = if m.is_one() {
                        fmt_rational(&abs)
                    } else if abs == one {
                        m.to_string()
                    } else {
                        format!("{}*{}", fmt_rational(&abs), m)
                    };
                    (neg, body)
                }
                None => {
                    let body = if m.is_one() {
                        format!("({c})")
                    } else {
                        format!("({c})*{m}")
                    };
                    (false, body)
                }
            };
            if idx == 0 {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    p: Vec<(i32, u32)>,
    w: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymRepr {
    terms: Vec<TermRepr>,
}

impl<C: Coeff> Serialize for SymFunc<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymRepr {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermRepr {
                    p: m.exps().to_vec(),
                    w: m.wexp(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff + FromStr> Deserialize<'de> for SymFunc<C>
where
    C::Err: fmt::Display,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SymRepr::deserialize(d)?;
        let mut out = SymFunc::zero();
        for t in repr.terms {
            let m = PMonomial::from_pairs(t.p, t.w).map_err(serde::de::Error::custom)?;
            let c: C = t.coeff.parse().map_err(serde::de::Error::custom)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl<C: Coeff> Add for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn add(self, o: &SymFunc<C>) -> SymFunc<C> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn sub(self, o: &SymFunc<C>) -> SymFunc<C> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn mul(self, o: &SymFunc<C>) -> SymFunc<C> {
        let mut out = SymFunc::zero();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                out.add_term(m.mul(n), c.clone() * d);
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn neg(self) -> SymFunc<C> {
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coeff> Add for SymFunc<C> {
    type Output = SymFunc<C>;
    fn add(self, o: SymFunc<C>) -> SymFunc<C> {
        &self + &o
    }
}

impl<C: Coeff> Sub for SymFunc<C> {
    type Output = SymFunc<C>;
    fn sub(self, o: SymFunc<C>) -> SymFunc<C> {
        &self - &o
    }
}

impl<C: Coeff> Mul for SymFunc<C> {
    type Output = SymFunc<C>;
    fn mul(self, o: SymFunc<C>) -> SymFunc<C> {
        &self * &o
    }
}

impl<C: Coeff> Neg for SymFunc<C> {
    type Output = SymFunc<C>;
    fn neg(self) -> SymFunc<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = SymFunc<RatFunc>;

    fn p(i: i32) -> F {
        F::generator(i)
    }

    #[test]
    fn products_and_text() {
        let f = &p(1) * &p(-1);
        assert_eq!(f.to_string(), "p_1*p_-1");
        let half = RatFunc::from_frac(1, 2);
        let e2 = (&(&p(1) * &p(1)) - &p(2)).scale(&half);
        let g = &e2 * &p(-1);
        assert_eq!(g.to_string(), "1/2*p_1^2*p_-1 - 1/2*p_2*p_-1");
    }

    #[test]
    fn star_and_theta() {
        let f = &p(2) * &p(-1);
        assert_eq!(f.star(), &p(-2) * &p(1));
        assert_eq!(p(3).theta().unwrap(), p(3).scale(&RatFunc::k()));
        let kp1 = p(1).scale(&RatFunc::k());
        assert_eq!(kp1.theta().unwrap(), p(1));
        let g = &p(1) * &p(-2);
        assert_eq!(g.theta().unwrap().theta().unwrap(), g);
    }

    #[test]
    fn json_round_trip() {
        let c = RatFunc::p0()
            .checked_div(&(RatFunc::one() + RatFunc::k()))
            .unwrap();
        let f = &(&p(1) * &p(-1)) - &F::constant(c);
        let f = &f + &F::w();
        let v = f.to_json();
        assert_eq!(F::from_json(&v).unwrap(), f);
        assert_eq!(f.to_string().parse::<F>().unwrap(), f);
    }

    #[test]
    fn exact_division() {
        let a = &p(1) + &p(-2);
        let b = &(&p(3) * &p(1)) - &F::one();
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap().unwrap(), a);
        assert!(p(1).exact_div(&p(2)).unwrap().is_none());
    }

    #[test]
    fn basis_counts() {
        // partitions of 0..=2 paired with partitions of the remainder
        assert_eq!(PMonomial::basis_up_to(2, false).len(), 1 + 1 + 2);
        assert_eq!(PMonomial::basis_up_to(2, true).len(), 1 + 2 + 2 + 1 + 2);
    }
}
