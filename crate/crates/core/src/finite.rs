//! Finite-dimensional images: symmetric Laurent polynomials in `z_1..z_N`,
//! the CMS operators acting on them, and the super specialization in
//! `x_1..x_m`, `y_1..y_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::json;

use crate::arith::{fmt_rational, BigRational, Coeff, RatFunc};
use crate::error::{Error, Result};
use crate::jack::jack_laurent;
use crate::ops::{apply, default_bc_coupling, OperatorKind};
use crate::partitions::{BiPartition, Partition};
use crate::psym::{PMonomial, SymFunc};
use crate::report::Report;

/// A Laurent polynomial in `n` variables, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLaurentPoly<C> {
    n: usize,
    terms: BTreeMap<Vec<i32>, C>,
}

impl<C: Coeff> FiniteLaurentPoly<C> {
    pub fn zero(n: usize) -> Self {
        FiniteLaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    pub fn monomial(exps: Vec<i32>, c: C) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `z_1^i + ... + z_n^i`; `n` when `i = 0`.
    pub fn power_sum(n: usize, i: i32) -> Self {
        let mut p = Self::zero(n);
        for v in 0..n {
            let mut e = vec![0; n];
            e[v] = i;
            p.add_term(e, C::one());
        }
        p
    }

    /// `(z_1 ⋯ z_n)^a`.
    pub fn top_power(n: usize, a: i32) -> Self {
        Self::monomial(vec![a; n], C::one())
    }

    /// The monomial symmetric polynomial `m_χ`, summing over the distinct
    /// rearrangements of `chi`.
    pub fn monomial_symmetric(chi: &[i32]) -> Self {
        let mut v = chi.to_vec();
        v.sort_unstable();
        let mut p = Self::zero(v.len());
        loop {
            p.add_term(v.clone(), C::one());
            if !next_permutation(&mut v) {
                break;
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: C) {
        debug_assert_eq!(exps.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(self.n);
        if c.is_zero() {
            return p;
        }
        for (e, v) in &self.terms {
            p.terms.insert(e.clone(), v.clone() * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    pub fn map_coeffs<D: Coeff>(
        &self,
        f: impl Fn(&C) -> Result<D>,
    ) -> Result<FiniteLaurentPoly<D>> {
        let mut p = FiniteLaurentPoly::zero(self.n);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c)?);
        }
        Ok(p)
    }

    /// The image under a permutation of the variables: variable `v` moves
    /// to position `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.n];
            for (v, &x) in e.iter().enumerate() {
                f[perm[v]] = x;
            }
            p.add_term(f, c.clone());
        }
        p
    }

    /// `z_i ↦ z_i^{-1}`.
    pub fn invert_vars(&self) -> Self {
        let mut p = Self::zero(self.n);
        for (e, c) in &self.terms {
            p.add_term(e.iter().map(|x| -x).collect(), c.clone());
        }
        p
    }

    /// Invariance under every transposition of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|v| {
            let mut perm: Vec<usize> = (0..self.n).collect();
            perm.swap(v, v + 1);
            self.permute(&perm) == *self
        })
    }
}

fn next_permutation(v: &mut [i32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl<C: Coeff> Add for &FiniteLaurentPoly<C> {
    type Output = FiniteLaurentPoly<C>;
    fn add(self, o: &FiniteLaurentPoly<C>) -> FiniteLaurentPoly<C> {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<C: Coeff> Neg for &FiniteLaurentPoly<C> {
    type Output = FiniteLaurentPoly<C>;
    fn neg(self) -> FiniteLaurentPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> Sub for &FiniteLaurentPoly<C> {
    type Output = FiniteLaurentPoly<C>;
    fn sub(self, o: &FiniteLaurentPoly<C>) -> FiniteLaurentPoly<C> {
        self + &(-o)
    }
}

impl<C: Coeff> Mul for &FiniteLaurentPoly<C> {
    type Output = FiniteLaurentPoly<C>;
    fn mul(self, o: &FiniteLaurentPoly<C>) -> FiniteLaurentPoly<C> {
        let mut p = FiniteLaurentPoly::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e = a.iter().zip(b).map(|(s, t)| s + t).collect();
                p.add_term(e, x.clone() * y);
            }
        }
        p
    }
}

fn fmt_coeff<C: Coeff>(c: &C) -> (bool, String) {
    match c.as_rational() {
        Some(q) => {
            let neg = q < BigRational::from_integer(0.into());
            let a = if neg { -q } else { q };
            (neg, fmt_rational(&a))
        }
        None => (false, format!("({c})")),
    }
}

fn fmt_poly<C: Coeff>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Vec<i32>, C>,
    var: impl Fn(usize) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (idx, (e, c)) in terms.iter().rev().enumerate() {
        let (neg, mag) = fmt_coeff(c);
        match (idx, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let vars: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(v, &x)| {
                if x == 1 {
                    var(v)
                } else {
                    format!("{}^{x}", var(v))
                }
            })
            .collect();
        match (mag == "1", vars.is_empty()) {
            (_, true) => f.write_str(&mag)?,
            (true, false) => f.write_str(&vars.join("*"))?,
            (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
        }
    }
    Ok(())
}

impl<C: Coeff> fmt::Display for FiniteLaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, &self.terms, |v| format!("z{}", v + 1))
    }
}

/// `h / (z_i - z_j)` for `h` antisymmetric under `z_i ↔ z_j`, term by
/// term: `z^b - z^{σb}` with `b_i > b_j` divides to
/// `rest · (z_i z_j)^{b_j} · Σ_t z_i^t z_j^{d-1-t}`, `d = b_i - b_j`.
pub fn divide_antisymmetric<C: Coeff>(
    h: &FiniteLaurentPoly<C>,
    i: usize,
    j: usize,
) -> Result<FiniteLaurentPoly<C>> {
    let mut out = FiniteLaurentPoly::zero(h.n);
    for (b, c) in &h.terms {
        if b[i] < b[j] {
            continue;
        }
        let mut swapped = b.clone();
        swapped.swap(i, j);
        if b[i] == b[j] || h.coeff(&swapped) != -c.clone() {
            return Err(Error::NonSymmetric(i + 1, j + 1));
        }
        let d = b[i] - b[j];
        for t in 0..d {
            let mut e = b.clone();
            e[i] = b[j] + t;
            e[j] = b[j] + d - 1 - t;
            out.add_term(e, c.clone());
        }
    }
    Ok(out)
}

/// The finite-dimensional operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteOperator {
    /// `Σ (z_i ∂_i)² - k Σ_{i<j} (z_i + z_j)/(z_i - z_j) (z_i ∂_i - z_j ∂_j)`.
    Trig,
    /// `Trig + k(N-1) Σ z_i ∂_i`.
    TrigModified,
    /// `Σ ∂_i² - 2k Σ_{i<j} (∂_i - ∂_j)/(z_i - z_j)`.
    Rational,
    /// `Σ z_i ∂_i² - 2k Σ_{i<j} (z_i ∂_i - z_j ∂_j)/(z_i - z_j) - (l - 1/2) Σ ∂_i`.
    Bc,
    /// `Σ z_i ∂_i`.
    MomentumTrig,
    /// `Σ ∂_i`.
    MomentumRational,
}

impl FiniteOperator {
    /// The finite operator that the infinite operator `kind` restricts to.
    pub fn counterpart(kind: OperatorKind) -> Self {
        match kind {
            OperatorKind::TrigStable => FiniteOperator::TrigModified,
            OperatorKind::TrigParam | OperatorKind::Laurent | OperatorKind::LaurentExt => {
                FiniteOperator::Trig
            }
            OperatorKind::Rational => FiniteOperator::Rational,
            OperatorKind::BcRational => FiniteOperator::Bc,
            OperatorKind::MomentumTrig => FiniteOperator::MomentumTrig,
            OperatorKind::MomentumRational => FiniteOperator::MomentumRational,
        }
    }
}

/// `Σ_b c_b f(b) z^{b - shift e_v}` summed over variables `v`.
fn euler<C: Coeff>(
    g: &FiniteLaurentPoly<C>,
    shift: i32,
    f: impl Fn(i64) -> i64,
) -> FiniteLaurentPoly<C> {
    let mut out = FiniteLaurentPoly::zero(g.n);
    for (b, c) in &g.terms {
        for v in 0..g.n {
            let w = f(b[v] as i64);
            if w == 0 {
                continue;
            }
            let mut e = b.clone();
            e[v] -= shift;
            out.add_term(e, c.clone() * &C::from_i64(w));
        }
    }
    out
}

/// `Σ_{i<j} q_ij · h_ij / (z_i - z_j)` with `h_ij` built from `g` by
/// `numerator`, and `q_ij` an optional extra factor `z_i + z_j`.
fn cross_term<C: Coeff>(
    g: &FiniteLaurentPoly<C>,
    times_sum: bool,
    numerator: impl Fn(&FiniteLaurentPoly<C>, usize, usize) -> FiniteLaurentPoly<C>,
) -> Result<FiniteLaurentPoly<C>> {
    let n = g.n;
    let mut out = FiniteLaurentPoly::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let q = divide_antisymmetric(&numerator(g, i, j), i, j)?;
            let q = if times_sum {
                let mut s = FiniteLaurentPoly::zero(n);
                for v in [i, j] {
                    let mut e = vec![0; n];
                    e[v] = 1;
                    s.add_term(e, C::one());
                }
                &q * &s
            } else {
                q
            };
            out = &out + &q;
        }
    }
    Ok(out)
}

/// `(z_i ∂_i - z_j ∂_j) g`.
fn euler_difference<C: Coeff>(
    g: &FiniteLaurentPoly<C>,
    i: usize,
    j: usize,
) -> FiniteLaurentPoly<C> {
    let mut h = FiniteLaurentPoly::zero(g.n);
    for (b, c) in &g.terms {
        h.add_term(b.clone(), c.clone() * &C::from_i64((b[i] - b[j]) as i64));
    }
    h
}

/// `(∂_i - ∂_j) g`.
fn derivative_difference<C: Coeff>(
    g: &FiniteLaurentPoly<C>,
    i: usize,
    j: usize,
) -> FiniteLaurentPoly<C> {
    let mut h = FiniteLaurentPoly::zero(g.n);
    for (b, c) in &g.terms {
        for (v, sign) in [(i, 1), (j, -1)] {
            if b[v] != 0 {
                let mut e = b.clone();
                e[v] -= 1;
                h.add_term(e, c.clone() * &C::from_i64(sign * b[v] as i64));
            }
        }
    }
    h
}

/// Applies a finite operator at coupling `k` (and BC coupling `l`). The
/// input must be symmetric for the operators with cross terms.
pub fn apply_finite<C: Coeff>(
    op: FiniteOperator,
    g: &FiniteLaurentPoly<C>,
    k: &C,
    l: &C,
) -> Result<FiniteLaurentPoly<C>> {
    let n = g.n as i64;
    Ok(match op {
        FiniteOperator::Trig | FiniteOperator::TrigModified => {
            let mut out = euler(g, 0, |b| b * b);
            out = &out - &cross_term(g, true, euler_difference)?.scale(k);
            if op == FiniteOperator::TrigModified {
                out = &out + &euler(g, 0, |b| b).scale(&(k.clone() * &C::from_i64(n - 1)));
            }
            out
        }
        FiniteOperator::Rational => {
            let two_k = k.clone() * &C::from_i64(2);
            &euler(g, 2, |b| b * (b - 1))
                - &cross_term(g, false, derivative_difference)?.scale(&two_k)
        }
        FiniteOperator::Bc => {
            let two_k = k.clone() * &C::from_i64(2);
            let half = C::from_rational(BigRational::new(1.into(), 2.into()));
            &(&euler(g, 1, |b| b * (b - 1))
                - &cross_term(g, false, euler_difference)?.scale(&two_k))
                - &euler(g, 1, |b| b).scale(&(l.clone() - half))
        }
        FiniteOperator::MomentumTrig => euler(g, 0, |b| b),
        FiniteOperator::MomentumRational => euler(g, 1, |b| b),
    })
}

/// `φ_N`: `p_i ↦ Σ z^i`, `p0 ↦ N` in the coefficients, `w ↦ z_1 ⋯ z_N`.
pub fn phi_n(f: &SymFunc<RatFunc>, n: usize) -> Result<FiniteLaurentPoly<RatFunc>> {
    let dim = RatFunc::from_i64(n as i64);
    let mut out = FiniteLaurentPoly::zero(n);
    let mut sums: BTreeMap<i32, FiniteLaurentPoly<RatFunc>> = BTreeMap::new();
    for (m, c) in f.iter() {
        let c = c.substitute(&RatFunc::k(), &dim).map_err(|_| Error::Pole {
            k: "k".into(),
            p0: n.to_string(),
            den: c.den().to_string(),
        })?;
        let mut img = FiniteLaurentPoly::top_power(n, m.wexp() as i32).scale(&c);
        for &(i, e) in m.exps() {
            let ps = sums
                .entry(i)
                .or_insert_with(|| FiniteLaurentPoly::power_sum(n, i));
            img = &img * &ps.pow(e);
        }
        out = &out + &img;
    }
    Ok(out)
}

/// `(λ_1 + a, …, λ_r + a, a, …, a, a - μ_s, …, a - μ_1)` of length `n`.
pub fn shifted_partition(b: &BiPartition, n: usize, a: u32) -> Result<Partition> {
    let (r, s) = (b.lam.len(), b.mu.len());
    if n <= r + s {
        return Err(Error::Invalid(format!("need N > l(λ) + l(μ) = {}", r + s)));
    }
    if a < b.mu.part(1) {
        return Err(Error::Invalid(format!("need a ≥ μ_1 = {}", b.mu.part(1))));
    }
    let mut nu: Vec<u32> = b.lam.parts().iter().map(|x| x + a).collect();
    nu.extend(std::iter::repeat_n(a, n - r - s));
    nu.extend(b.mu.parts().iter().rev().map(|x| a - x));
    Ok(Partition::from_unsorted(
        nu.into_iter().filter(|&x| x > 0).collect(),
    ))
}

fn padded(p: &Partition, n: usize) -> Vec<i32> {
    (1..=n).map(|i| p.part(i) as i32).collect()
}

/// The classical Jack polynomial `P_ν(z_1..z_N; k)`: the monic
/// eigenfunction of the finite trigonometric operator, solved triangularly
/// in the monomial symmetric basis of `N` variables.
pub fn finite_jack(nu: &Partition, n: usize) -> Result<FiniteLaurentPoly<RatFunc>> {
    if nu.len() > n {
        return Err(Error::Invalid(format!("{nu} has more than {n} parts")));
    }
    let rungs: Vec<Partition> = Partition::all_of_size(nu.size())
        .into_iter()
        .filter(|p| p.len() <= n && p.prefix_dominated_by(nu))
        .collect();
    let k = RatFunc::k();
    let basis: Vec<FiniteLaurentPoly<RatFunc>> = rungs
        .iter()
        .map(|p| FiniteLaurentPoly::monomial_symmetric(&padded(p, n)))
        .collect();
    let images = basis
        .iter()
        .map(|m| apply_finite(FiniteOperator::Trig, m, &k, &RatFunc::zero()))
        .collect::<Result<Vec<_>>>()?;
    let entry = |col: usize, row: usize| images[col].coeff(&sorted_desc(&padded(&rungs[row], n)));
    let top = entry(0, 0);
    let mut u = vec![RatFunc::one()];
    for pos in 1..rungs.len() {
        let mut s = RatFunc::zero();
        for rho in 0..pos {
            if !u[rho].is_zero() {
                s = s + entry(rho, pos) * &u[rho];
            }
        }
        if s.is_zero() {
            u.push(s);
            continue;
        }
        let gap = top.clone() - entry(pos, pos);
        if gap.is_zero() {
            return Err(Error::Resonance {
                target: BiPartition::new(nu.clone(), Partition::empty()),
                below: BiPartition::new(rungs[pos].clone(), Partition::empty()),
            });
        }
        u.push(s.checked_div(&gap)?);
    }
    Ok(basis
        .iter()
        .zip(&u)
        .fold(FiniteLaurentPoly::zero(n), |acc, (m, c)| &acc + &m.scale(c)))
}

fn sorted_desc(v: &[i32]) -> Vec<i32> {
    let mut v = v.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// `φ_N P_{λ,μ}(k, N) · (z_1 ⋯ z_N)^a` against the classical Jack
/// polynomial `P_ν` in `N` variables.
pub fn check_specialization_jack(b: &BiPartition, n: usize, a: u32) -> Result<Report> {
    let nu = shifted_partition(b, n, a)?;
    let mut rep = Report::new(
        "specialization-jack",
        json!({"pair": b, "N": n, "a": a, "nu": nu}),
    );
    let lhs = &phi_n(&jack_laurent(b)?.p_form, n)? * &FiniteLaurentPoly::top_power(n, a as i32);
    let rhs = finite_jack(&nu, n)?;
    rep.record(lhs == rhs, || format!("{lhs} != {rhs}"));
    Ok(rep)
}

/// For each basis monomial `f` of total degree at most `degree`, compares
/// `φ_N(apply(kind, f))` with the finite operator applied to `φ_N(f)`.
/// For the operator on `Λ±[w]` the monomials are also multiplied by `w`
/// and `w²`.
pub fn check_commuting_diagram(kind: OperatorKind, n: usize, degree: u32) -> Result<Report> {
    let mut rep = Report::new(
        "commuting-diagram",
        json!({"op": kind.name(), "N": n, "degree": degree}),
    );
    let op = FiniteOperator::counterpart(kind);
    let k = RatFunc::k();
    let l = RatFunc::from_rational(default_bc_coupling());
    let w_powers = if kind == OperatorKind::LaurentExt {
        0..=2
    } else {
        0..=0
    };
    for base in PMonomial::basis_up_to(degree, kind.is_laurent()) {
        for wexp in w_powers.clone() {
            let m = base.with_wexp(wexp);
            let f = SymFunc::monomial(m.clone());
            let lhs = phi_n(&apply(kind, &f)?, n)?;
            let rhs = apply_finite(op, &phi_n(&f, n)?, &k, &l)?;
            rep.record(lhs == rhs, || format!("{m}: {lhs} != {rhs}"));
        }
    }
    Ok(rep)
}

/// The two power-sum identities behind the stable operator, for
/// `a = 1..=a_max`, with `p_0 = N`:
/// `Σ_{i<j} (z_i + z_j)(z_i^a - z_j^a)/(z_i - z_j) = -a p_a + Σ_{i<a} p_i p_{a-i}` and
/// `Σ_{i<j} (z_i^a - z_j^a)/(z_i - z_j) = -a p_{a-1}/2 + Σ_{i<a} p_i p_{a-i-1}/2`.
pub fn check_power_sum_identities(n: usize, a_max: u32) -> Report {
    type P = FiniteLaurentPoly<BigRational>;
    let mut rep = Report::new("power-sum-identities", json!({"N": n, "a_max": a_max}));
    let p = |i: i32| P::power_sum(n, i);
    let q = |x: i64| BigRational::from_integer(x.into());
    let half = BigRational::new(1.into(), 2.into());
    for a in 1..=a_max as i32 {
        let mut quotient = P::zero(n);
        let mut with_sum = P::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let mut t = P::zero(n);
                for s in 0..a {
                    let mut e = vec![0; n];
                    e[i] = s;
                    e[j] = a - 1 - s;
                    t.add_term(e, q(1));
                }
                let mut zsum = P::zero(n);
                for v in [i, j] {
                    let mut e = vec![0; n];
                    e[v] = 1;
                    zsum.add_term(e, q(1));
                }
                with_sum = &with_sum + &(&t * &zsum);
                quotient = &quotient + &t;
            }
        }
        let mut rhs1 = p(a).scale(&q(-(a as i64)));
        let mut rhs2 = p(a - 1).scale(&(q(-(a as i64)) * &half));
        for i in 0..a {
            rhs1 = &rhs1 + &(&p(i) * &p(a - i));
            rhs2 = &rhs2 + &(&p(i) * &p(a - i - 1)).scale(&half);
        }
        rep.record(with_sum == rhs1, || format!("a = {a}: first identity"));
        rep.record(quotient == rhs2, || format!("a = {a}: second identity"));
    }
    rep
}

/// A Laurent polynomial in `x_1..x_m, y_1..y_n` with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperPoly {
    pub m: usize,
    pub n: usize,
    /// Exponents of the `x` variables first, then the `y` variables.
    pub poly: FiniteLaurentPoly<BigRational>,
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        fmt_poly(f, &self.poly.terms, |v| {
            if v < m {
                format!("x{}", v + 1)
            } else {
                format!("y{}", v - m + 1)
            }
        })
    }
}

/// `φ_{m,n}`: `p_i ↦ Σ x^i - Σ y^i`, `p0 ↦ m - n`, `w ↦ Π x / Π y`, with
/// the coefficients evaluated at `k = at_k`.
pub fn phi_mn(f: &SymFunc<RatFunc>, m: usize, n: usize, at_k: &BigRational) -> Result<SuperPoly> {
    let vars = m + n;
    let sdim = BigRational::from_integer((m as i64 - n as i64).into());
    let super_sum = |i: i32| {
        let mut p = FiniteLaurentPoly::zero(vars);
        for v in 0..vars {
            let mut e = vec![0; vars];
            e[v] = i;
            p.add_term(
                e,
                BigRational::from_integer(if v < m { 1 } else { -1 }.into()),
            );
        }
        if i == 0 {
            p = FiniteLaurentPoly::constant(vars, sdim.clone());
        }
        p
    };
    let berezinian: Vec<i32> = (0..vars).map(|v| if v < m { 1 } else { -1 }).collect();
    let mut out = FiniteLaurentPoly::zero(vars);
    for (mono, c) in f.iter() {
        let c = c.eval_at(at_k, &sdim)?;
        let w: Vec<i32> = berezinian.iter().map(|x| x * mono.wexp() as i32).collect();
        let mut img = FiniteLaurentPoly::monomial(w, c);
        for &(i, e) in mono.exps() {
            img = &img * &super_sum(i).pow(e);
        }
        out = &out + &img;
    }
    Ok(SuperPoly { m, n, poly: out })
}
