//! The verification matrix: named suites split into independent items, each
//! producing a [`Report`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::arith::{BigRational, ParamPoly, Params, RatFunc};
use crate::error::{Error, Result};
use crate::finite::{
    check_commuting_diagram, check_power_sum_identities, check_specialization_jack, phi_mn,
    FiniteLaurentPoly, SuperPoly,
};
use crate::jack::{
    eigenvalue, eigenvalue_ext, eigenvalue_s, jack_laurent, jack_laurent_in, jacobi_trudy_det,
    jt_limit,
};
use crate::ops::{
    apply, check_duality, check_stable_relation, check_star_symmetry, DualityForm, OperatorKind,
};
use crate::partitions::{BiPartition, DiagramY, Partition};
use crate::pieri::{
    classical_pieri, classical_pieri_direct, jack_alpha, pieri_direct, pieri_expand, v_add,
    v_diagrammatic, ClosingRatio,
};
use crate::psym::SymFunc;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Dualities,
    Pieri,
    Specialization,
    Jt,
    Eigen,
    Diagrams,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Dualities,
        Suite::Pieri,
        Suite::Specialization,
        Suite::Jt,
        Suite::Eigen,
        Suite::Diagrams,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dualities => "dualities",
            Suite::Pieri => "pieri",
            Suite::Specialization => "specialization",
            Suite::Jt => "jt",
            Suite::Eigen => "eigen",
            Suite::Diagrams => "diagrams",
        }
    }

    /// Bound used when none is given: total degree of test monomials for
    /// `dualities` and `diagrams`, the largest `|λ|`, `|μ|` otherwise.
    pub fn default_bound(self) -> u32 {
        match self {
            Suite::Dualities | Suite::Diagrams => 4,
            Suite::Specialization => 2,
            Suite::Pieri | Suite::Jt | Suite::Eigen => 3,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// One independent check.
#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Duality(OperatorKind, DualityForm, u32),
    /// The literal duality statement must fail, first at `p_1`.
    LiteralDualityFails(u32),
    StarSymmetry(u32),
    StableRelation(u32),
    /// `star(P_{λ,μ}) = P_{μ,λ}`.
    StarJack(BiPartition),
    Eigen(BiPartition),
    /// First and second higher eigenvalues against their closed forms.
    Integrals(BiPartition),
    EigenExt(BiPartition, u32),
    /// Numeric solve at `(k, p0)` against the symbolic solution evaluated there.
    NumericAgreement(BiPartition, BigRational, BigRational),
    PieriCoordinate(BiPartition),
    PieriDiagram(BiPartition),
    PieriClassical(Partition),
    SpecializationJack(BiPartition, usize, u32),
    PowerSums(usize, u32),
    JacobiTrudy(BiPartition),
    /// `P_{(1),(1)}` at `k = -1` and its super specializations.
    JacobiTrudyBase,
    Diagram(OperatorKind, usize, u32),
}

/// The items of a suite, in canonical order. Numeric spot checks are not
/// included; see [`numeric_items`].
pub fn items(suite: Suite, bound: Option<u32>) -> Vec<Item> {
    let d = bound.unwrap_or(suite.default_bound());
    let pairs = |n: u32| BiPartition::all_up_to(n, n);
    match suite {
        Suite::Dualities => {
            let mut out = Vec::new();
            for kind in [
                OperatorKind::TrigParam,
                OperatorKind::Rational,
                OperatorKind::BcRational,
                OperatorKind::Laurent,
            ] {
                for form in [DualityForm::Linear, DualityForm::Twisted] {
                    out.push(Item::Duality(kind, form, d));
                }
            }
            out.push(Item::LiteralDualityFails(d));
            out.push(Item::StarSymmetry(d));
            out.push(Item::StableRelation(d));
            out.extend(pairs(d.min(3)).into_iter().map(Item::StarJack));
            out
        }
        Suite::Eigen => {
            let mut out: Vec<Item> = pairs(d).into_iter().map(Item::Eigen).collect();
            out.extend(pairs(d + 1).into_iter().map(Item::Integrals));
            for b in pairs(d.min(2)) {
                for l in 0..=2 {
                    out.push(Item::EigenExt(b.clone(), l));
                }
            }
            out
        }
        Suite::Pieri => {
            let mut out: Vec<Item> = pairs(d).into_iter().map(Item::PieriCoordinate).collect();
            out.extend(pairs(d).into_iter().map(Item::PieriDiagram));
            out.extend(
                Partition::all_up_to(d)
                    .into_iter()
                    .map(Item::PieriClassical),
            );
            out
        }
        Suite::Specialization => {
            let mut out = Vec::new();
            for b in pairs(d) {
                for n in [3, 4, 5] {
                    if n <= b.lam.len() + b.mu.len() {
                        continue;
                    }
                    let a = b.mu.part(1);
                    out.push(Item::SpecializationJack(b.clone(), n, a));
                    out.push(Item::SpecializationJack(b.clone(), n, a + 1));
                }
            }
            out.extend((2..=4).map(|n| Item::PowerSums(n, 6)));
            out
        }
        Suite::Jt => {
            let mut out: Vec<Item> = pairs(d).into_iter().map(Item::JacobiTrudy).collect();
            out.push(Item::JacobiTrudyBase);
            out
        }
        Suite::Diagrams => {
            let mut out = Vec::new();
            for kind in OperatorKind::ALL {
                for n in [2, 3, 4] {
                    if kind == OperatorKind::LaurentExt && n > 3 {
                        continue;
                    }
                    out.push(Item::Diagram(kind, n, d));
                }
            }
            out
        }
    }
}

/// Numeric spot checks at the given parameter points, for every pair with
/// `|λ|, |μ| ≤ 2`.
pub fn numeric_items(points: &[(BigRational, BigRational)]) -> Vec<Item> {
    let mut out = Vec::new();
    for (k, p0) in points {
        for b in BiPartition::all_up_to(2, 2) {
            out.push(Item::NumericAgreement(b, k.clone(), p0.clone()));
        }
    }
    out
}

fn jack_form(b: &BiPartition) -> Result<SymFunc<RatFunc>> {
    Ok(jack_laurent(b)?.p_form.clone())
}

/// `D·f` with `D` the least common multiple of the coefficient
/// denominators, so that every coefficient is a polynomial. The operators
/// have polynomial coefficients, so eigen-identities survive the scaling.
fn cleared(f: &SymFunc<RatFunc>) -> SymFunc<RatFunc> {
    let mut lcm = ParamPoly::one();
    for (_, c) in f.iter() {
        let g = ParamPoly::gcd(&lcm, c.den());
        lcm = &lcm * &c.den().exact_div(&g).expect("gcd divides");
    }
    SymFunc::from_terms(f.iter().map(|(m, c)| {
        let cofactor = lcm.exact_div(c.den()).expect("denominator divides the lcm");
        (m.clone(), RatFunc::from_poly(c.num() * &cofactor))
    }))
}

fn int(n: i64) -> RatFunc {
    RatFunc::from_i64(n)
}

/// Runs one item. Errors are precondition failures (poles, resonances);
/// a failed identity is a report with a counterexample.
pub fn run(item: &Item) -> Result<Report> {
    match item {
        Item::Duality(kind, form, d) => check_duality(*kind, *form, *d),
        Item::LiteralDualityFails(d) => {
            let inner = check_duality(OperatorKind::TrigParam, DualityForm::Literal, *d)?;
            let mut rep = Report::new("duality-literal-fails", json!({"degree": d}));
            let at_p1 = inner
                .counterexample
                .as_deref()
                .is_some_and(|c| c.starts_with("p_1:"));
            rep.record(at_p1, || format!("literal form: {inner}"));
            Ok(rep)
        }
        Item::StarSymmetry(d) => check_star_symmetry(OperatorKind::Laurent, *d),
        Item::StableRelation(d) => check_stable_relation(*d),
        Item::StarJack(b) => {
            let mut rep = Report::new("star-jack", json!({"pair": b}));
            let lhs = jack_form(b)?.star();
            let rhs = jack_form(&b.swapped())?;
            rep.record(lhs == rhs, || format!("{lhs} != {rhs}"));
            Ok(rep)
        }
        Item::Eigen(b) => {
            let mut rep = Report::new("eigen", json!({"pair": b}));
            let p = cleared(&jack_form(b)?);
            let lhs = apply(OperatorKind::Laurent, &p)?;
            let rhs = p.scale(&eigenvalue(b));
            rep.record(lhs == rhs, || format!("L P - E P = {}", &lhs - &rhs));
            Ok(rep)
        }
        Item::Integrals(b) => {
            let mut rep = Report::new("eigen-integrals", json!({"pair": b}));
            let e1 = eigenvalue_s(b, 1)?;
            let e2 = eigenvalue_s(b, 2)?;
            rep.record(e1 == int(b.weight()), || format!("E1 = {e1}"));
            let half = eigenvalue(b) * RatFunc::from_frac(1, 2);
            rep.record(e2 == half, || format!("E2 = {e2}, E/2 = {half}"));
            Ok(rep)
        }
        Item::EigenExt(b, l) => {
            let mut rep = Report::new("eigen-ext", json!({"pair": b, "l": l}));
            let p = cleared(&jack_form(b)?).times_w(*l);
            let lhs = apply(OperatorKind::LaurentExt, &p)?;
            let rhs = p.scale(&eigenvalue_ext(b, *l));
            rep.record(lhs == rhs, || {
                format!("L w^l P - E w^l P = {}", &lhs - &rhs)
            });
            Ok(rep)
        }
        Item::NumericAgreement(b, k, p0) => {
            let mut rep = Report::new(
                "numeric-agreement",
                json!({"pair": b, "k": k.to_string(), "p0": p0.to_string()}),
            );
            let symbolic = jack_laurent(b)?;
            let mut expected = BTreeMap::new();
            for (nu, c) in &symbolic.m_coeffs {
                // a pole of the symbolic solution: nothing to compare
                let Ok(v) = c.eval_at(k, p0) else {
                    return Ok(rep);
                };
                if !num_traits::Zero::is_zero(&v) {
                    expected.insert(nu.clone(), v);
                }
            }
            let numeric = jack_laurent_in(b, &Params::numeric(k.clone(), p0.clone()))?;
            rep.record(numeric.m_coeffs == expected, || {
                format!(
                    "numeric coefficients {:?} != {:?}",
                    numeric.m_coeffs, expected
                )
            });
            Ok(rep)
        }
        Item::PieriCoordinate(b) => {
            let mut rep = Report::new("pieri-coordinate", json!({"pair": b}));
            let rule: BTreeMap<BiPartition, RatFunc> = pieri_expand(b)?
                .into_iter()
                .filter(|t| !t.coeff.is_zero())
                .map(|t| (t.target, t.coeff))
                .collect();
            let direct = pieri_direct(b)?;
            rep.record(rule == direct, || {
                format!("rule {rule:?} != direct {direct:?}")
            });
            Ok(rep)
        }
        Item::PieriDiagram(b) => {
            let mut rep = Report::new("pieri-diagram", json!({"pair": b}));
            let y = DiagramY::new(&b.lam, &b.mu);
            let taller = y.enlarged(y.height_pos + 1, y.height_neg + 1)?;
            for t in pieri_expand(b)? {
                for fig in [&y, &taller] {
                    let v = v_diagrammatic(&t.target, fig, ClosingRatio::Balanced)?;
                    rep.record(v == t.coeff, || {
                        format!(
                            "{} (rectangle {}x{}): {v} != {}",
                            t.target, fig.height_pos, fig.height_neg, t.coeff
                        )
                    });
                }
            }
            Ok(rep)
        }
        Item::PieriClassical(lam) => {
            let mut rep = Report::new("pieri-classical", json!({"lam": lam}));
            let alpha = jack_alpha();
            let direct = classical_pieri_direct(lam)?;
            let empty = Partition::empty();
            let mut rule = BTreeMap::new();
            for (bigger, _) in lam.add_box_candidates() {
                let c = classical_pieri(&bigger, lam, &alpha)?;
                let v = v_add(&bigger, lam, &empty)?;
                rep.record(v == c, || format!("{bigger}: {v} != {c}"));
                rule.insert(bigger, c);
            }
            rep.record(rule == direct, || {
                format!("rule {rule:?} != direct {direct:?}")
            });
            Ok(rep)
        }
        Item::SpecializationJack(b, n, a) => check_specialization_jack(b, *n, *a),
        Item::PowerSums(n, a) => Ok(check_power_sum_identities(*n, *a)),
        Item::JacobiTrudy(b) => {
            let mut rep = Report::new("jacobi-trudy", json!({"pair": b}));
            match jt_limit(b) {
                Ok(lim) => {
                    let det = jacobi_trudy_det(b)?;
                    rep.record(lim == det, || format!("limit {lim} != determinant {det}"));
                }
                Err(e @ (Error::PoleAtMinusOne { .. } | Error::ResidualP0Dependence { .. })) => {
                    rep.fail(e.to_string());
                }
                Err(e) => return Err(e),
            }
            Ok(rep)
        }
        Item::JacobiTrudyBase => {
            let mut rep = Report::new("jacobi-trudy-base", json!({}));
            let b = BiPartition::of(&[1], &[1]);
            let lim = jt_limit(&b)?;
            let expected: SymFunc<RatFunc> = "p_1*p_-1 - 1".parse()?;
            rep.record(lim == expected, || format!("{lim} != {expected}"));
            let minus_one = BigRational::from_integer((-1).into());
            for (m, n) in [(1, 1), (2, 1)] {
                let got = phi_mn(&lim, m, n, &minus_one)?;
                let hand = hand_super_image(m, n);
                rep.record(got == hand, || format!("phi_{m},{n}: {got} != {hand}"));
            }
            Ok(rep)
        }
        Item::Diagram(kind, n, d) => check_commuting_diagram(*kind, *n, *d),
    }
}

/// `(Σx - Σy)(Σx⁻¹ - Σy⁻¹) - 1`, built term by term.
fn hand_super_image(m: usize, n: usize) -> SuperPoly {
    let vars = m + n;
    let sign = |v: usize| if v < m { 1i64 } else { -1 };
    let mut poly = FiniteLaurentPoly::constant(vars, BigRational::from_integer((-1).into()));
    for a in 0..vars {
        for b in 0..vars {
            let mut e = vec![0; vars];
            e[a] += 1;
            e[b] -= 1;
            poly.add_term(e, BigRational::from_integer((sign(a) * sign(b)).into()));
        }
    }
    SuperPoly { m, n, poly }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_items_pass() {
        for item in [
            Item::JacobiTrudyBase,
            Item::Eigen(BiPartition::of(&[1], &[1])),
            Item::PieriDiagram(BiPartition::of(&[2], &[1])),
            Item::LiteralDualityFails(2),
        ] {
            let rep = run(&item).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }
}
