//! Sparse polynomials in the two formal parameters `k` and `p0` over the
//! rationals, together with the univariate machinery used for their GCD.
//!
//! The GCD works in the recursive representation `Q[p0][k]`: contents are
//! univariate GCDs over `Q[p0]`, primitive parts are combined with a
//! primitive pseudo-remainder sequence in `k`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair `k^k * p0^p0`, ordered degree-lexicographically with `k > p0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exp {
    pub k: u32,
    pub p0: u32,
}

impl Exp {
    pub const ONE: Exp = Exp { k: 0, p0: 0 };

    pub fn new(k: u32, p0: u32) -> Self {
        Exp { k, p0 }
    }

    pub fn total(self) -> u32 {
        self.k + self.p0
    }

    fn divides(self, other: Exp) -> bool {
        self.k <= other.k && self.p0 <= other.p0
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then(self.k.cmp(&other.k))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Exp {
    type Output = Exp;
    fn add(self, o: Exp) -> Exp {
        Exp::new(self.k + o.k, self.p0 + o.p0)
    }
}

/// Polynomial in `k` and `p0` with rational coefficients. Canonical: no zero
/// coefficients are stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<Exp, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Exp::ONE)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn monomial(c: BigRational, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ParamPoly { terms }
    }

    pub fn k() -> Self {
        Self::monomial(BigRational::one(), Exp::new(1, 0))
    }

    pub fn p0() -> Self {
        Self::monomial(BigRational::one(), Exp::new(0, 1))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, BigRational)>) -> Self {
        let mut p = ParamPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exp::ONE).is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no `k` or `p0` dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Exp::ONE).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exp) -> BigRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<(Exp, &BigRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn degree_k(&self) -> u32 {
        self.terms.keys().map(|e| e.k).max().unwrap_or(0)
    }

    pub fn degree_p0(&self) -> u32 {
        self.terms.keys().map(|e| e.p0).max().unwrap_or(0)
    }

    pub fn depends_on_k(&self) -> bool {
        self.terms.keys().any(|e| e.k > 0)
    }

    pub fn depends_on_p0(&self) -> bool {
        self.terms.keys().any(|e| e.p0 > 0)
    }

    fn add_term(&mut self, e: Exp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self - c * x^shift * other`, in place.
    fn sub_scaled_shifted(&mut self, c: &BigRational, shift: Exp, other: &ParamPoly) {
        for (e, v) in &other.terms {
            self.add_term(*e + shift, -(c * v));
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (de, dc) = d.leading()?;
        let dc = dc.clone();
        if d.terms.len() == 1 {
            let mut q = ParamPoly::zero();
            for (e, c) in &self.terms {
                if !de.divides(*e) {
                    return None;
                }
                q.terms.insert(Exp::new(e.k - de.k, e.p0 - de.p0), c / &dc);
            }
            return Some(q);
        }
        let mut r = self.clone();
        let mut q = ParamPoly::zero();
        while let Some((re, rc)) = r.leading() {
            if !de.divides(re) {
                return None;
            }
            let c = rc / &dc;
            let shift = Exp::new(re.k - de.k, re.p0 - de.p0);
            r.sub_scaled_shifted(&c, shift, d);
            q.add_term(shift, c);
        }
        Some(q)
    }

    pub fn eval(&self, k: &BigRational, p0: &BigRational) -> BigRational {
        let kp = powers(k, self.degree_k());
        let pp = powers(p0, self.degree_p0());
        self.terms
            .iter()
            .map(|(e, c)| c * &kp[e.k as usize] * &pp[e.p0 as usize])
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Greatest common divisor, normalized so that its leading coefficient is 1.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.as_constant().is_some() || b.as_constant().is_some() {
            return ParamPoly::one();
        }
        if coprime_by_specialization(a, b) {
            return ParamPoly::one();
        }
        let ra = to_rec(a);
        let rb = to_rec(b);
        let ca = rec_content(&ra);
        let cb = rec_content(&rb);
        let c = UPoly::gcd(&ca, &cb);
        let mut pa = rec_primitive(&ra, &ca);
        let mut pb = rec_primitive(&rb, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        while !pb.is_empty() {
            let r = rec_prem(&pa, &pb);
            pa = pb;
            pb = if r.is_empty() {
                r
            } else {
                let cr = rec_content(&r);
                rec_primitive(&r, &cr)
            };
        }
        let g: Vec<UPoly> = pa.iter().map(|u| u * &c).collect();
        from_rec(&g).monic()
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => ParamPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

fn powers(x: &BigRational, n: u32) -> Vec<BigRational> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(BigRational::one());
    for i in 0..n as usize {
        let next = &v[i] * x;
        v.push(next);
    }
    v
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: &ParamPoly) -> ParamPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: &ParamPoly) -> ParamPoly {
        let mut r = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(*e1 + *e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &'a $t) -> $t { (&self).$m(o) }
        }
    )*};
}
forward_owned!(ParamPoly, Add add, Sub sub, Mul mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_exp(e: Exp) -> String {
    let mut parts = Vec::new();
    match e.k {
        0 => {}
        1 => parts.push("k".to_string()),
        n => parts.push(format!("k^{n}")),
    }
    match e.p0 {
        0 => {}
        1 => parts.push("p0".to_string()),
        n => parts.push(format!("p0^{n}")),
    }
    parts.join("*")
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *e == Exp::ONE {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_exp(*e))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), fmt_exp(*e))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q (in p0), and the recursive form Q[p0][k].

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct UPoly(Vec<BigRational>);

impl UPoly {
    fn trimmed(mut v: Vec<BigRational>) -> UPoly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        UPoly(v)
    }

    fn one() -> UPoly {
        UPoly(vec![BigRational::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &BigRational {
        self.0
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    fn scale(&self, c: &BigRational) -> UPoly {
        UPoly::trimmed(self.0.iter().map(|x| x * c).collect())
    }

    fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        UPoly::trimmed(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// Euclidean division; `d` must be nonzero.
    fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (UPoly::default(), self.clone());
        }
        let dl = d.0.len();
        let inv = d.lc().recip();
        let mut q = vec![BigRational::zero(); r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + dl - 1] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        (UPoly::trimmed(q), UPoly::trimmed(r))
    }

    /// Monic GCD; `gcd(0, 0) = 0`.
    fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact univariate division");
        q
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::trimmed(v)
    }
}

/// Coefficients in `Q[p0]` indexed by the power of `k`; no trailing zeros.
type RecPoly = Vec<UPoly>;

fn to_rec(p: &ParamPoly) -> RecPoly {
    let mut v: Vec<Vec<BigRational>> = vec![Vec::new(); p.degree_k() as usize + 1];
    for (e, c) in &p.terms {
        let row = &mut v[e.k as usize];
        if row.len() <= e.p0 as usize {
            row.resize(e.p0 as usize + 1, BigRational::zero());
        }
        row[e.p0 as usize] = c.clone();
    }
    let mut r: RecPoly = v.into_iter().map(UPoly::trimmed).collect();
    while r.last().is_some_and(UPoly::is_zero) {
        r.pop();
    }
    r
}

fn from_rec(r: &[UPoly]) -> ParamPoly {
    let mut p = ParamPoly::zero();
    for (i, u) in r.iter().enumerate() {
        for (j, c) in u.0.iter().enumerate() {
            p.add_term(Exp::new(i as u32, j as u32), c.clone());
        }
    }
    p
}

fn rec_content(r: &[UPoly]) -> UPoly {
    let mut g = UPoly::default();
    for u in r {
        g = UPoly::gcd(&g, u);
        if g.deg() == 0 && !g.is_zero() {
            return UPoly::one();
        }
    }
    g
}

/// Divides out the content `c` and scales the leading coefficient to 1,
/// which keeps the rational coefficients of the remainder sequence small.
fn rec_primitive(r: &[UPoly], c: &UPoly) -> RecPoly {
    let q: RecPoly = r.iter().map(|u| u.exact_div(c)).collect();
    match q.last() {
        Some(l) if !l.is_zero() && !l.lc().is_one() => {
            let inv = l.lc().recip();
            q.iter().map(|u| u.scale(&inv)).collect()
        }
        _ => q,
    }
}

/// `p` with one variable fixed: `at_p0 = true` sets `p0 = x`, leaving a
/// polynomial in `k`; otherwise sets `k = x`.
fn specialize(p: &ParamPoly, at_p0: bool, x: &BigRational) -> UPoly {
    let deg = if at_p0 { p.degree_k() } else { p.degree_p0() } as usize;
    let fixed = if at_p0 { p.degree_p0() } else { p.degree_k() };
    let xp = powers(x, fixed);
    let mut v = vec![BigRational::zero(); deg + 1];
    for (e, c) in &p.terms {
        let (free, bound) = if at_p0 { (e.k, e.p0) } else { (e.p0, e.k) };
        v[free as usize] += c * &xp[bound as usize];
    }
    UPoly::trimmed(v)
}

/// Cheap sufficient test for `gcd(a, b) = 1`. At a point where the leading
/// coefficient of `a` in the free variable survives, the specialized gcd has
/// at least the degree of the true gcd; so two constant specialized gcds
/// (one per variable) force a constant gcd.
fn coprime_by_specialization(a: &ParamPoly, b: &ParamPoly) -> bool {
    for at_p0 in [true, false] {
        let free_deg = if at_p0 { a.degree_k() } else { a.degree_p0() } as usize;
        let other_free = if at_p0 { b.degree_k() } else { b.degree_p0() };
        if free_deg == 0 || other_free == 0 {
            // the gcd cannot involve this variable
            continue;
        }
        let point = (2..40)
            .map(|n| BigRational::from_integer(BigInt::from(n)))
            .map(|x| (specialize(a, at_p0, &x), x))
            .find(|(sa, _)| sa.deg() == free_deg);
        let Some((sa, x)) = point else {
            return false;
        };
        let sb = specialize(b, at_p0, &x);
        if sb.is_zero() || UPoly::gcd(&sa, &sb).deg() > 0 {
            return false;
        }
    }
    true
}

/// Pseudo-remainder of `a` by `b` in `Q[p0][k]`.
fn rec_prem(a: &[UPoly], b: &[UPoly]) -> RecPoly {
    let mut r: RecPoly = a.to_vec();
    let db = b.len() - 1;
    let lcb = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (i, bi) in b.iter().enumerate() {
            let t = &lcr * bi;
            r[i + dr - db] = r[i + dr - db].sub(&t);
        }
        while r.last().is_some_and(UPoly::is_zero) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> ParamPoly {
        ParamPoly::k()
    }
    fn p0() -> ParamPoly {
        ParamPoly::p0()
    }
    fn c(n: i64) -> ParamPoly {
        ParamPoly::from_i64(n)
    }

    #[test]
    fn deg_lex_leading_term() {
        let p = &(&c(1) + &k()) - &(&k() * &p0());
        let (e, coeff) = p.leading().unwrap();
        assert_eq!(e, Exp::new(1, 1));
        assert_eq!(*coeff, rat(-1));
        assert_eq!(p.to_string(), "-k*p0 + k + 1");
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let a = &(&k() * &k()) - &c(1);
        let b = &k() - &c(1);
        assert_eq!(ParamPoly::gcd(&a, &b), b);
        assert_eq!(a.exact_div(&b).unwrap(), &k() + &c(1));
    }

    #[test]
    fn gcd_bivariate_common_factor() {
        let f = &(&c(1) + &k()) - &(&k() * &p0());
        let g1 = &(&p0() * &p0()) + &k();
        let g2 = &(&k() * &p0()) - &c(3);
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(ParamPoly::gcd(&a, &b), f.monic());
        let coprime = ParamPoly::gcd(&g1, &g2);
        assert!(coprime.is_one());
    }

    #[test]
    fn gcd_with_content_in_p0() {
        // (p0 - 1)(k + p0) and (p0 - 1)(k - 2)
        let a = &(&p0() - &c(1)) * &(&k() + &p0());
        let b = &(&p0() - &c(1)) * &(&k() - &c(2));
        assert_eq!(ParamPoly::gcd(&a, &b), &p0() - &c(1));
    }

    #[test]
    fn inexact_division_is_detected() {
        assert!((&k() + &c(1)).exact_div(&(&k() - &c(1))).is_none());
    }
}
