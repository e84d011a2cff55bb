//! The infinite-dimensional CMS operators in power-sum coordinates, applied
//! structurally by the product rule with `∂_a = a ∂/∂p_a`.
//!
//! Whenever a term produces `p_0`, the factor is the parameter binding of the
//! operator, not a generator.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::arith::{BigRational, Coeff, Params, RatFunc};
use crate::error::{Error, Result};
use crate::psym::{PMonomial, SymFunc};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorKind {
    /// The stable trigonometric operator on `Λ⁺`.
    TrigStable,
    /// The trigonometric operator with the dimension parameter, on `Λ⁺`.
    TrigParam,
    /// The rational operator on `Λ⁺`, of degree `-2`.
    Rational,
    /// The BC rational operator on `Λ⁺`, of degree `-1`.
    BcRational,
    /// The operator on all of `Λ±` (w is inert).
    Laurent,
    /// The operator on `Λ±[w]`.
    LaurentExt,
    /// `Σ_a p_a ∂_a` over all nonzero `a`.
    MomentumTrig,
    /// `Σ_{a>0} p_{a-1} ∂_a` on `Λ⁺`.
    MomentumRational,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 8] = [
        OperatorKind::TrigStable,
        OperatorKind::TrigParam,
        OperatorKind::Rational,
        OperatorKind::BcRational,
        OperatorKind::Laurent,
        OperatorKind::LaurentExt,
        OperatorKind::MomentumTrig,
        OperatorKind::MomentumRational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::TrigStable => "trig-stable",
            OperatorKind::TrigParam => "trig-param",
            OperatorKind::Rational => "rational",
            OperatorKind::BcRational => "bc-rational",
            OperatorKind::Laurent => "laurent",
            OperatorKind::LaurentExt => "laurent-ext",
            OperatorKind::MomentumTrig => "momentum-trig",
            OperatorKind::MomentumRational => "momentum-rational",
        }
    }

    /// Accepts negative generator indices.
    pub fn is_laurent(self) -> bool {
        matches!(
            self,
            OperatorKind::Laurent | OperatorKind::LaurentExt | OperatorKind::MomentumTrig
        )
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown operator {s:?}")))
    }
}

/// The BC coupling used when none is given.
pub fn default_bc_coupling() -> BigRational {
    BigRational::new(1.into(), 3.into())
}

/// An operator together with its parameter bindings.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<C> {
    pub kind: OperatorKind,
    pub k: C,
    pub p0: C,
    /// BC coupling; ignored by the other kinds.
    pub l: C,
}

impl Operator<RatFunc> {
    /// The operator at the formal parameters `k`, `p0`.
    pub fn symbolic(kind: OperatorKind) -> Self {
        Operator::new(kind, &Params::symbolic())
    }
}

impl<C: Coeff> Operator<C> {
    pub fn new(kind: OperatorKind, params: &Params<C>) -> Self {
        Operator {
            kind,
            k: params.k.clone(),
            p0: params.p0.clone(),
            l: C::from_rational(default_bc_coupling()),
        }
    }

    pub fn with_bindings(kind: OperatorKind, k: C, p0: C, l: C) -> Self {
        Operator { kind, k, p0, l }
    }

    pub fn apply(&self, f: &SymFunc<C>) -> Result<SymFunc<C>> {
        self.check_domain(f)?;
        let mut out = SymFunc::zero();
        for (m, c) in f.iter() {
            self.apply_monomial(m, c, &mut out);
        }
        Ok(out)
    }

    fn check_domain(&self, f: &SymFunc<C>) -> Result<()> {
        if self.kind.is_laurent() {
            return Ok(());
        }
        if let Some(m) = f.iter().map(|(m, _)| m).find(|m| m.has_negative()) {
            return Err(Error::Domain {
                op: self.kind.name(),
                what: format!("the monomial {m} with a negative index"),
            });
        }
        if f.has_w() {
            return Err(Error::Domain {
                op: self.kind.name(),
                what: "an element involving w".into(),
            });
        }
        Ok(())
    }

    fn int(n: i64) -> C {
        C::from_i64(n)
    }

    /// Adds `coeff · p_idx · m` (or `coeff · p0 · m` when `idx = 0`).
    fn emit(&self, out: &mut SymFunc<C>, m: &PMonomial, idx: i32, coeff: C) {
        match m.times_gen(idx) {
            Some(mm) => out.add_term(mm, coeff),
            None => out.add_term(m.clone(), coeff * &self.p0),
        }
    }

    /// Adds `coeff · p_a · p_b · m`, with zero indices read as `p0`.
    fn emit2(&self, out: &mut SymFunc<C>, m: &PMonomial, a: i32, b: i32, coeff: C) {
        let mut mm = m.clone();
        let mut c = coeff;
        for i in [a, b] {
            match mm.times_gen(i) {
                Some(x) => mm = x,
                None => c = c * &self.p0,
            }
        }
        out.add_term(mm, c);
    }

    /// `Σ_{(a,b)} p_{a+b+shift} ∂_a ∂_b` over ordered pairs of factors of `m`.
    fn pair_term(&self, m: &PMonomial, c: &C, shift: i32, out: &mut SymFunc<C>) {
        let exps = m.exps();
        for (x, &(a, ea)) in exps.iter().enumerate() {
            for (y, &(b, eb)) in exps.iter().enumerate() {
                let mult = if x == y {
                    if ea < 2 {
                        continue;
                    }
                    (a as i64) * (a as i64) * (ea as i64) * (ea as i64 - 1)
                } else {
                    (a as i64) * (b as i64) * (ea as i64) * (eb as i64)
                };
                let rest = m
                    .without_gen(a)
                    .and_then(|r| r.without_gen(b))
                    .expect("factors present");
                self.emit(out, &rest, a + b + shift, c.clone() * &Self::int(mult));
            }
        }
    }

    /// For each factor `p_c` of `m` with `c` in `range`, replaces it by
    /// `coeff · Σ p_a p_b` over `a + b = c - drop`, `a, b` in `parts`.
    fn split_term(
        &self,
        m: &PMonomial,
        c: &C,
        coeff: &C,
        drop: i32,
        applies: impl Fn(i32) -> bool,
        parts: impl Fn(i32) -> Vec<(i32, i32)>,
        out: &mut SymFunc<C>,
    ) {
        for &(idx, e) in m.exps() {
            if !applies(idx) {
                continue;
            }
            let rest = m.without_gen(idx).expect("factor present");
            let d = c.clone() * coeff * &Self::int(idx as i64 * e as i64);
            for (a, b) in parts(idx - drop) {
                self.emit2(out, &rest, a, b, d.clone());
            }
        }
    }

    /// `Σ_c φ(c) p_{c-drop} ∂_c` over factors `p_c` of `m` with `c ≥ 1`.
    fn lowering_term(
        &self,
        m: &PMonomial,
        c: &C,
        drop: i32,
        phi: impl Fn(i32) -> Option<C>,
        out: &mut SymFunc<C>,
    ) {
        for &(idx, e) in m.exps() {
            let Some(w) = phi(idx) else { continue };
            let rest = m.without_gen(idx).expect("factor present");
            let d = c.clone() * &w * &Self::int(idx as i64 * e as i64);
            self.emit(out, &rest, idx - drop, d);
        }
    }

    fn apply_monomial(&self, m: &PMonomial, c: &C, out: &mut SymFunc<C>) {
        let k = &self.k;
        let p0 = &self.p0;
        let one = C::one();
        let positive_pairs = |s: i32| (1..s).map(|a| (a, s - a)).collect::<Vec<_>>();
        let negative_pairs = |s: i32| (s + 1..0).map(|a| (a, s - a)).collect::<Vec<_>>();
        let nonneg_pairs = |s: i32| (0..=s).map(|a| (a, s - a)).collect::<Vec<_>>();
        // Σ_a φ(a)·a·e_a, the diagonal part of first-order Euler-type terms
        let euler = |phi: &dyn Fn(i64) -> C| {
            m.exps().iter().fold(C::zero(), |acc, &(a, e)| {
                acc + phi(a as i64) * &Self::int(a as i64 * e as i64)
            })
        };
        match self.kind {
            OperatorKind::TrigStable | OperatorKind::TrigParam => {
                self.pair_term(m, c, 0, out);
                let mk = -k.clone();
                self.split_term(m, c, &mk, 0, |i| i > 1, positive_pairs, out);
                let diag = if self.kind == OperatorKind::TrigStable {
                    euler(&|a| Self::int(a) + k.clone() * &Self::int(a) - k.clone())
                } else {
                    euler(&|a| -(k.clone() * p0) + (one.clone() + k) * &Self::int(a))
                };
                out.add_term(m.clone(), c.clone() * &diag);
            }
            OperatorKind::Laurent | OperatorKind::LaurentExt => {
                self.pair_term(m, c, 0, out);
                let mk = -k.clone();
                self.split_term(m, c, &mk, 0, |i| i > 1, positive_pairs, out);
                self.split_term(m, c, k, 0, |i| i < -1, negative_pairs, out);
                let mut diag = euler(&|a| {
                    let sign = if a > 0 { -k.clone() } else { k.clone() };
                    sign * p0 + (one.clone() + k) * &Self::int(a)
                });
                if self.kind == OperatorKind::LaurentExt {
                    let n = Self::int(m.wexp() as i64);
                    let net = Self::int(m.net_degree());
                    diag = diag + p0.clone() * &n * &n + Self::int(2) * &n * &net;
                }
                out.add_term(m.clone(), c.clone() * &diag);
            }
            OperatorKind::Rational => {
                self.pair_term(m, c, -2, out);
                let mk = -k.clone();
                self.split_term(m, c, &mk, 2, |i| i >= 2, nonneg_pairs, out);
                let kk = one.clone() + k;
                self.lowering_term(
                    m,
                    c,
                    2,
                    |i| (i >= 2).then(|| kk.clone() * &Self::int(i as i64 - 1)),
                    out,
                );
            }
            OperatorKind::BcRational => {
                self.pair_term(m, c, -1, out);
                let mk = -k.clone();
                self.split_term(m, c, &mk, 1, |i| i >= 3, positive_pairs, out);
                let shift = Self::int(2) * k * p0
                    + self.l.clone()
                    + C::from_rational(BigRational::new(1.into(), 2.into()));
                let kk = one.clone() + k;
                self.lowering_term(
                    m,
                    c,
                    1,
                    |i| (i >= 1).then(|| kk.clone() * &Self::int(i as i64) - shift.clone()),
                    out,
                );
                let e1 = m.exp_of(1);
                if e1 > 0 {
                    let rest = m.without_gen(1).expect("factor present");
                    let d = c.clone() * k * p0 * p0 * &Self::int(e1 as i64);
                    out.add_term(rest, d);
                }
            }
            OperatorKind::MomentumTrig => {
                let net = Self::int(m.net_degree());
                out.add_term(m.clone(), c.clone() * &net);
            }
            OperatorKind::MomentumRational => {
                self.lowering_term(m, c, 1, |i| (i >= 1).then(|| one.clone()), out);
            }
        }
    }
}

/// Applies the symbolic operator of the given kind.
pub fn apply(kind: OperatorKind, f: &SymFunc<RatFunc>) -> Result<SymFunc<RatFunc>> {
    Operator::symbolic(kind).apply(f)
}

/// The trigonometric (`Σ p_a ∂_a`) or rational (`Σ p_{a-1} ∂_a`) momentum.
pub fn momentum<C: Coeff>(
    rational: bool,
    f: &SymFunc<C>,
    params: &Params<C>,
) -> Result<SymFunc<C>> {
    let kind = if rational {
        OperatorKind::MomentumRational
    } else {
        OperatorKind::MomentumTrig
    };
    Operator::new(kind, params).apply(f)
}

/// Which form of the `p_a ↦ k p_a` duality to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualityForm {
    /// Linear scaling `T: p_a ↦ k p_a`:
    /// `T⁻¹ L_{k,p0} T = k L_{1/k, k p0}`.
    Linear,
    /// Twisted map `θ` (also `k ↦ 1/k` on coefficients):
    /// `θ L_{k,p0} θ = k⁻¹ L_{k, p0/k}`.
    Twisted,
    /// `θ L_{k,p0} θ = k L_{1/k, p0/k}`, the statement taken literally.
    Literal,
}

impl DualityForm {
    pub fn name(self) -> &'static str {
        match self {
            DualityForm::Linear => "linear",
            DualityForm::Twisted => "twisted",
            DualityForm::Literal => "literal",
        }
    }
}

/// Bindings `(k, p0, l)` of the dual operator and the scalar in front of it.
fn dual_bindings(form: DualityForm, l: &RatFunc) -> Result<(RatFunc, RatFunc, RatFunc, RatFunc)> {
    let k = RatFunc::k();
    let kinv = k.inv()?;
    let p0 = RatFunc::p0();
    let half = RatFunc::from_frac(1, 2);
    let two_l_plus_one = RatFunc::from_i64(2) * l + RatFunc::one();
    // 2 l' + 1 = s (2 l + 1)
    let coupling = |s: &RatFunc| (s.clone() * &two_l_plus_one - RatFunc::one()) * &half;
    Ok(match form {
        DualityForm::Linear => (kinv.clone(), k.clone() * &p0, coupling(&kinv), k),
        DualityForm::Twisted => (k.clone(), p0 * &kinv, coupling(&k), kinv),
        DualityForm::Literal => (kinv.clone(), p0 * &kinv, coupling(&kinv), k),
    })
}

/// Checks one duality identity on every basis monomial of total degree at
/// most `degree`; the report carries the first counterexample.
pub fn check_duality(kind: OperatorKind, form: DualityForm, degree: u32) -> Result<Report> {
    let l = RatFunc::from_rational(default_bc_coupling());
    let lhs_op = Operator::with_bindings(kind, RatFunc::k(), RatFunc::p0(), l.clone());
    let (dk, dp0, dl, scalar) = dual_bindings(form, &l)?;
    let rhs_op = Operator::with_bindings(kind, dk, dp0, dl);
    let mut report = Report::new(
        format!("duality/{}", kind.name()),
        json!({"form": form.name(), "degree": degree}),
    );
    let kinv = RatFunc::k().inv()?;
    for m in PMonomial::basis_up_to(degree, kind.is_laurent()) {
        let f = SymFunc::monomial(m.clone());
        let lhs = match form {
            DualityForm::Linear => {
                let g = lhs_op.apply(&f.scale_generators(&RatFunc::k()))?;
                g.scale_generators(&kinv)
            }
            DualityForm::Twisted | DualityForm::Literal => lhs_op.apply(&f.theta()?)?.theta()?,
        };
        let rhs = rhs_op.apply(&f)?.scale(&scalar);
        report.record(lhs == rhs, || format!("{m}: {lhs} != {rhs}"));
    }
    Ok(report)
}

/// Checks `star ∘ L ∘ star = L` on basis monomials of `Λ±`.
pub fn check_star_symmetry(kind: OperatorKind, degree: u32) -> Result<Report> {
    let op = Operator::symbolic(kind);
    let mut report = Report::new(
        format!("star-symmetry/{}", kind.name()),
        json!({"degree": degree}),
    );
    for m in PMonomial::basis_up_to(degree, true) {
        let f = SymFunc::monomial(m.clone());
        let lhs = op.apply(&f.star())?.star();
        let rhs = op.apply(&f)?;
        report.record(lhs == rhs, || format!("{m}: {lhs} != {rhs}"));
    }
    Ok(report)
}

/// Checks that the stable operator equals the parametric one plus
/// `k(p0 - 1)` times the momentum, on `Λ⁺` basis monomials.
pub fn check_stable_relation(degree: u32) -> Result<Report> {
    let stable = Operator::symbolic(OperatorKind::TrigStable);
    let param = Operator::symbolic(OperatorKind::TrigParam);
    let mom = Operator::symbolic(OperatorKind::MomentumTrig);
    let shift = RatFunc::k() * (RatFunc::p0() - RatFunc::one());
    let mut report = Report::new("stable-relation", json!({"degree": degree}));
    for m in PMonomial::basis_up_to(degree, false) {
        let f = SymFunc::monomial(m.clone());
        let lhs = stable.apply(&f)?;
        let rhs = &param.apply(&f)? + &mom.apply(&f)?.scale(&shift);
        report.record(lhs == rhs, || format!("{m}: {lhs} != {rhs}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = SymFunc<RatFunc>;

    fn p(i: i32) -> F {
        F::generator(i)
    }

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn laurent_on_small_inputs() {
        assert!(apply(OperatorKind::Laurent, &F::one()).unwrap().is_zero());
        let f = &p(1) * &p(-1);
        let expected = &f.scale(&r("2 + 2*k - 2*k*p0")) - &F::constant(r("2*p0"));
        assert_eq!(apply(OperatorKind::Laurent, &f).unwrap(), expected);
    }

    #[test]
    fn trig_and_momentum() {
        assert_eq!(apply(OperatorKind::TrigStable, &p(1)).unwrap(), p(1));
        assert_eq!(
            apply(OperatorKind::MomentumTrig, &p(3)).unwrap(),
            p(3).scale(&r("3"))
        );
        assert!(apply(OperatorKind::MomentumTrig, &(&p(1) * &p(-1)))
            .unwrap()
            .is_zero());
        assert_eq!(
            apply(OperatorKind::MomentumRational, &p(2)).unwrap(),
            p(1).scale(&r("2"))
        );
    }

    #[test]
    fn rational_on_p2() {
        let got = apply(OperatorKind::Rational, &p(2)).unwrap();
        assert_eq!(got, F::constant(r("-2*k*p0^2 + 2*p0 + 2*k*p0")));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            apply(OperatorKind::Rational, &p(-1)),
            Err(Error::Domain { .. })
        ));
        assert!(apply(OperatorKind::TrigParam, &F::w()).is_err());
        assert!(apply(OperatorKind::LaurentExt, &F::w()).is_ok());
    }

    #[test]
    fn extended_operator_on_w() {
        // w is an eigenfunction with eigenvalue p0
        let got = apply(OperatorKind::LaurentExt, &F::w()).unwrap();
        assert_eq!(got, F::w().scale(&RatFunc::p0()));
    }

    #[test]
    fn literal_duality_fails_on_p1() {
        let rep = check_duality(OperatorKind::TrigParam, DualityForm::Literal, 1).unwrap();
        assert!(!rep.passed());
        assert!(rep.counterexample.unwrap().starts_with("p_1"));
    }

    #[test]
    fn corrected_dualities_hold() {
        for kind in [
            OperatorKind::TrigParam,
            OperatorKind::Rational,
            OperatorKind::BcRational,
            OperatorKind::Laurent,
        ] {
            for form in [DualityForm::Linear, DualityForm::Twisted] {
                let rep = check_duality(kind, form, 3).unwrap();
                assert!(rep.passed(), "{rep}");
            }
        }
        assert!(check_star_symmetry(OperatorKind::Laurent, 3)
            .unwrap()
            .passed());
        assert!(check_stable_relation(3).unwrap().passed());
    }
}
