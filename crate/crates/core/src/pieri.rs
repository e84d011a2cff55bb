//! Multiplication by `p_1` (and `p_{-1}`) in the Jack–Laurent basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Serialize, Serializer};

use crate::arith::{Factored, ParamPoly, Params, RatFunc};
use crate::error::{Error, Result};
use crate::jack::{factored_coeffs, jack_laurent, FactoredCoeffs};
use crate::mbasis::{m_to_p, p_to_m};
use crate::ops::OperatorKind;
use crate::partitions::{BiPartition, Cell, DiagramY, Partition, YCell};
use crate::psym::SymFunc;

/// Which box changed between the source pair and the target pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PieriKind {
    AddedToLambda,
    RemovedFromMu,
    AddedToMu,
    RemovedFromLambda,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PieriTerm {
    pub target: BiPartition,
    pub kind: PieriKind,
    #[serde(serialize_with = "as_string")]
    pub coeff: RatFunc,
}

fn as_string<S: Serializer>(c: &RatFunc, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn int(n: i64) -> RatFunc {
    RatFunc::from_i64(n)
}

/// `c_λ(j, i, x) = λ_i - j - k(λ'_j - i) + x`, for column `j` and row `i`.
pub fn c_lambda(lam: &Partition, j: i64, i: i64, x: &RatFunc) -> RatFunc {
    let li = lam.part(i as usize) as i64;
    let lj = lam.col_len(j as usize) as i64;
    int(li - j) - RatFunc::k() * int(lj - i) + x.clone()
}

/// `c_{λμ}(j, i, x) = λ_i + j + k(μ'_j + i) + x`.
pub fn c_pair(lam: &Partition, mu: &Partition, j: i64, i: i64, x: &RatFunc) -> RatFunc {
    let li = lam.part(i as usize) as i64;
    let mj = mu.col_len(j as usize) as i64;
    int(li + j) + RatFunc::k() * int(mj + i) + x.clone()
}

fn ratio(num: [RatFunc; 2], den: [RatFunc; 2]) -> Result<RatFunc> {
    let [a, b] = num;
    let [c, d] = den;
    (a * b).checked_div(&(c * d))
}

fn added_cell(from: &Partition, to: &Partition) -> Result<Cell> {
    from.add_box_candidates()
        .into_iter()
        .find(|(p, _)| p == to)
        .map(|(_, c)| c)
        .ok_or_else(|| Error::NotOneBox(format!("{to} is not {from} plus one box")))
}

fn removed_cell(from: &Partition, to: &Partition) -> Result<Cell> {
    from.remove_box_candidates()
        .into_iter()
        .find(|(p, _)| p == to)
        .map(|(_, c)| c)
        .ok_or_else(|| Error::NotOneBox(format!("{to} is not {from} minus one box")))
}

/// Coefficient of `P_{λ̃,μ}` in `p_1 P_{λ,μ}`.
pub fn v_add(lam_tilde: &Partition, lam: &Partition, _mu: &Partition) -> Result<RatFunc> {
    let cell = added_cell(lam, lam_tilde)?;
    let (i, j) = (cell.row as i64, cell.col as i64);
    let k = RatFunc::k();
    let mut v = RatFunc::one();
    for r in 1..i {
        let c = |x: RatFunc| c_lambda(lam, j, r, &x);
        v = v * ratio(
            [c(int(1)), c(-int(2) * k.clone())],
            [c(-k.clone()), c(int(1) - k.clone())],
        )?;
    }
    Ok(v)
}

/// Coefficient of `P_{λ,μ̃}` in `p_1 P_{λ,μ}`; `μ'` is taken before the
/// deletion.
pub fn v_remove(mu_tilde: &Partition, lam: &Partition, mu: &Partition) -> Result<RatFunc> {
    let cell = removed_cell(mu, mu_tilde)?;
    let (i, j) = (cell.row as i64, cell.col as i64);
    let k = RatFunc::k();
    let p0 = RatFunc::p0();
    let mut v = RatFunc::one();
    for r in i + 1..=mu.len() as i64 {
        let c = |x: RatFunc| c_lambda(mu, j, r, &x);
        v = v * ratio(
            [c(int(1) + k.clone()), c(-k.clone())],
            [c(int(1)), c(RatFunc::zero())],
        )?;
    }
    for r in 1..=lam.len() as i64 {
        let c = |x: RatFunc| c_pair(lam, mu, j, r, &x);
        v = v * ratio(
            [
                c(int(-1) - k.clone() * (p0.clone() + int(2))),
                c(-k.clone() * p0.clone()),
            ],
            [
                c(int(-1) - k.clone() * (p0.clone() + int(1))),
                c(-k.clone() * (p0.clone() + int(1))),
            ],
        )?;
    }
    let (ll, lm) = (lam.len() as i64, mu.len() as i64);
    let mj = mu.col_len(j as usize) as i64;
    let closing = ratio(
        [
            int(j - 1) + k.clone() * (int(ll + mj - 1) - p0.clone()),
            int(j) + k.clone() * int(mj - lm),
        ],
        [
            int(j) + k.clone() * (int(ll + mj) - p0.clone()),
            int(j - 1) + k.clone() * int(mj - lm - 1),
        ],
    )?;
    Ok(v * closing)
}

/// Reading of the closing two-factor ratio of the diagrammatic removal
/// coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosingRatio {
    /// The form that agrees with the coordinate coefficient.
    Balanced,
    /// `p0` entering with a minus sign and `y'_{-1}` added rather than
    /// subtracted; kept to demonstrate that it disagrees.
    AsPrinted,
}

fn product_over(
    cells: &[YCell],
    y: &DiagramY,
    num: [&RatFunc; 2],
    den: [&RatFunc; 2],
) -> Result<RatFunc> {
    let mut v = RatFunc::one();
    for &cell in cells {
        let c = |x: &RatFunc| y.content(cell, x);
        v = v * ratio([c(num[0]), c(num[1])], [c(den[0]), c(den[1])])?;
    }
    Ok(v)
}

/// The coefficient of `P_target` in `p_1 P_{λ,μ}` from the figure `y` of
/// `(λ, μ)`. The rectangle of `y` may be taller than the figure.
pub fn v_diagrammatic(
    target: &BiPartition,
    y: &DiagramY,
    closing: ClosingRatio,
) -> Result<RatFunc> {
    let k = RatFunc::k();
    let p0 = RatFunc::p0();
    if target.mu == y.mu {
        let cell = added_cell(&y.lam, &target.lam)?;
        let cells = y.pi1(cell)?;
        return product_over(
            &cells,
            y,
            [&(-int(2) * k.clone()), &int(1)],
            [&-k.clone(), &(int(1) - k.clone())],
        );
    }
    if target.lam != y.lam {
        return Err(Error::NotOneBox(format!(
            "{target} is not one box away from ({},{})",
            y.lam, y.mu
        )));
    }
    let cell = removed_cell(&y.mu, &target.mu)?;
    let v2 = product_over(
        &y.pi2(cell)?,
        y,
        [&(int(-1) - k.clone()), &k],
        [&int(-1), &RatFunc::zero()],
    )?;
    let v3 = product_over(
        &y.pi3(cell)?,
        y,
        [
            &(int(-1) - k.clone() * (p0.clone() + int(2))),
            &(-k.clone() * p0.clone()),
        ],
        [
            &(int(-1) - k.clone() * (p0.clone() + int(1))),
            &(-k.clone() * (p0.clone() + int(1))),
        ],
    )?;
    let j = -(cell.col as i64);
    let yj = y.y_col(j);
    let top = y.height_pos as i64;
    let bottom = -(y.height_neg as i64);
    let jr = int(j);
    let closing = match closing {
        ClosingRatio::Balanced => ratio(
            [
                jr.clone() + int(1) + k.clone() * (int(yj - top + 1) + p0.clone()),
                jr.clone() + k.clone() * int(yj - bottom),
            ],
            [
                jr.clone() + k.clone() * (int(yj - top) + p0.clone()),
                jr.clone() + int(1) + k.clone() * int(yj - bottom + 1),
            ],
        ),
        ClosingRatio::AsPrinted => ratio(
            [
                jr.clone() + int(1) + k.clone() * (int(yj - top - 1) - p0.clone()),
                jr.clone() + k.clone() * int(yj + bottom),
            ],
            [
                jr.clone() + k.clone() * (int(yj - top) - p0.clone()),
                jr.clone() + int(1) + k.clone() * int(yj + bottom + 1),
            ],
        ),
    }?;
    Ok(v2 * v3 * closing)
}

/// `p_1 P_{λ,μ}` as a combination of Jack–Laurent functions.
pub fn pieri_expand(b: &BiPartition) -> Result<Vec<PieriTerm>> {
    let mut out = Vec::new();
    for (lam, _) in b.lam.add_box_candidates() {
        out.push(PieriTerm {
            coeff: v_add(&lam, &b.lam, &b.mu)?,
            target: BiPartition::new(lam, b.mu.clone()),
            kind: PieriKind::AddedToLambda,
        });
    }
    for (mu, _) in b.mu.remove_box_candidates() {
        out.push(PieriTerm {
            coeff: v_remove(&mu, &b.lam, &b.mu)?,
            target: BiPartition::new(b.lam.clone(), mu),
            kind: PieriKind::RemovedFromMu,
        });
    }
    Ok(out)
}

/// `p_{-1} P_{λ,μ}`, by applying the star involution to the `p_1` rule for
/// `(μ, λ)`.
pub fn pieri_p_minus_one(b: &BiPartition) -> Result<Vec<PieriTerm>> {
    Ok(pieri_expand(&b.swapped())?
        .into_iter()
        .map(|t| PieriTerm {
            target: t.target.swapped(),
            kind: match t.kind {
                PieriKind::AddedToLambda => PieriKind::AddedToMu,
                PieriKind::RemovedFromMu => PieriKind::RemovedFromLambda,
                PieriKind::AddedToMu => PieriKind::AddedToLambda,
                PieriKind::RemovedFromLambda => PieriKind::RemovedFromMu,
            },
            coeff: t.coeff,
        })
        .collect())
}

/// Expands `f` in the Jack–Laurent basis by repeatedly removing the
/// ladder-maximal monomial.
pub fn expand_in_jack_basis(f: &SymFunc<RatFunc>) -> Result<BTreeMap<BiPartition, RatFunc>> {
    let mut rest = p_to_m(f, &Params::symbolic())?;
    let mut out = BTreeMap::new();
    while let Some(top) = rest.keys().max_by(|a, b| a.ladder_cmp(b)).cloned() {
        let c = rest[&top].clone();
        let p = jack_laurent(&top)?;
        for (nu, u) in &p.m_coeffs {
            let slot = rest.entry(nu.clone()).or_insert_with(RatFunc::zero);
            *slot = slot.clone() - c.clone() * u.clone();
            if slot.is_zero() {
                rest.remove(nu);
            }
        }
        out.insert(top, c);
    }
    Ok(out)
}

/// `p_gen m_ν` in the monomial basis; the coefficients are polynomials.
fn times_generator(gen: i32, nu: &BiPartition) -> Result<Arc<BTreeMap<BiPartition, ParamPoly>>> {
    type Table = HashMap<(i32, BiPartition), Arc<BTreeMap<BiPartition, ParamPoly>>>;
    static CACHE: OnceLock<RwLock<Table>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (gen, nu.clone());
    if let Some(hit) = cache.read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let f = &SymFunc::generator(gen) * &*m_to_p(nu)?;
    let mut out = BTreeMap::new();
    for (rho, c) in p_to_m(&f, &Params::symbolic())? {
        if !c.den().is_one() {
            return Err(Error::Invalid(format!(
                "non-polynomial coefficient {c} in p_{gen} m{nu}"
            )));
        }
        out.insert(rho, c.num().clone());
    }
    let out = Arc::new(out);
    cache.write().unwrap().insert(key, out.clone());
    Ok(out)
}

fn factored(kind: OperatorKind, b: &BiPartition) -> Result<FactoredCoeffs> {
    factored_coeffs(kind, b)?.ok_or_else(|| Error::Invalid(format!("no factored solution for {b}")))
}

/// `p_gen P_b` expanded in the eigenbasis of `kind` by peeling off the
/// ladder-maximal monomial.
fn direct_product_in(
    kind: OperatorKind,
    gen: i32,
    b: &BiPartition,
) -> Result<BTreeMap<BiPartition, RatFunc>> {
    let mut rest: BTreeMap<BiPartition, Factored> = BTreeMap::new();
    for (nu, u) in factored(kind, b)?.iter() {
        for (rho, c) in times_generator(gen, nu)?.iter() {
            let slot = rest.entry(rho.clone()).or_default();
            *slot = slot.add(&u.mul_poly(c));
        }
    }
    rest.retain(|_, v| !v.is_zero());
    let mut out = BTreeMap::new();
    while let Some(top) = rest.keys().max_by(|a, b| a.ladder_cmp(b)).cloned() {
        let c = rest.remove(&top).expect("key present");
        for (nu, u) in factored(kind, &top)?.iter().filter(|(nu, _)| *nu != top) {
            let slot = rest.entry(nu.clone()).or_default();
            *slot = slot.add(&c.mul(u).neg());
            if slot.is_zero() {
                rest.remove(nu);
            }
        }
        out.insert(top, c.to_ratfunc());
    }
    Ok(out)
}

/// `p_gen P_{λ,μ}` for `gen = ±1`, expanded directly in the Jack–Laurent
/// basis without the closed-form coefficients.
pub fn direct_product(gen: i32, b: &BiPartition) -> Result<BTreeMap<BiPartition, RatFunc>> {
    direct_product_in(OperatorKind::Laurent, gen, b)
}

/// `p_1 P_{λ,μ}` expanded directly.
pub fn pieri_direct(b: &BiPartition) -> Result<BTreeMap<BiPartition, RatFunc>> {
    direct_product(1, b)
}

/// The classical Jack Pieri coefficient for adding the box of `lam_tilde`,
/// at Jack parameter `alpha`: a product over the rows above the new box of
/// `(αa + l + 2)(αa + α + l) / ((αa + α + l + 1)(αa + l + 1))`, with arm
/// `a` and leg `l` of the cell `(r, j)` in `λ`.
pub fn classical_pieri(lam_tilde: &Partition, lam: &Partition, alpha: &RatFunc) -> Result<RatFunc> {
    let cell = added_cell(lam, lam_tilde)?;
    let (i, j) = (cell.row as i64, cell.col as i64);
    let mut v = RatFunc::one();
    for r in 1..i {
        let a = alpha.clone() * int(lam.part(r as usize) as i64 - j);
        let l = int(i - 1 - r);
        v = v * ratio(
            [
                a.clone() + l.clone() + int(2),
                a.clone() + alpha.clone() + l.clone(),
            ],
            [
                a.clone() + alpha.clone() + l.clone() + int(1),
                a + l + int(1),
            ],
        )?;
    }
    Ok(v)
}

/// The Jack parameter matching coupling `k`: `α = -1/k`.
pub fn jack_alpha() -> RatFunc {
    -RatFunc::k().inv().expect("k is nonzero")
}

/// `p_1 P_λ` for a classical Jack function, expanded directly in the
/// classical basis.
pub fn classical_pieri_direct(lam: &Partition) -> Result<BTreeMap<Partition, RatFunc>> {
    let b = BiPartition::new(lam.clone(), Partition::empty());
    Ok(direct_product_in(OperatorKind::TrigStable, 1, &b)?
        .into_iter()
        .map(|(t, c)| (t.lam, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn content_functions() {
        let z = RatFunc::zero();
        assert_eq!(
            c_lambda(&Partition::empty(), 1, 1, &RatFunc::p0()),
            r("-1 + k + p0")
        );
        assert_eq!(c_lambda(&p(&[2, 1]), 1, 1, &z), r("1 - k"));
        assert_eq!(c_pair(&p(&[1]), &p(&[1]), 1, 1, &z), r("2 + 2*k"));
    }

    #[test]
    fn addition_coefficients() {
        assert_eq!(
            v_add(&p(&[1]), &Partition::empty(), &Partition::empty()).unwrap(),
            RatFunc::one()
        );
        assert_eq!(
            v_add(&p(&[1, 1]), &p(&[1]), &Partition::empty()).unwrap(),
            r("2/(1 - k)")
        );
        assert_eq!(
            v_add(&p(&[3, 1]), &p(&[2, 1]), &p(&[2])).unwrap(),
            RatFunc::one()
        );
        assert!(v_add(&p(&[3]), &p(&[1]), &Partition::empty()).is_err());
    }

    #[test]
    fn simplest_expansions_match_direct_product() {
        for b in [
            BiPartition::empty(),
            BiPartition::of(&[1], &[]),
            BiPartition::of(&[], &[1]),
            BiPartition::of(&[1], &[1]),
        ] {
            let direct = pieri_direct(&b).unwrap();
            let rule: BTreeMap<_, _> = pieri_expand(&b)
                .unwrap()
                .into_iter()
                .map(|t| (t.target, t.coeff))
                .collect();
            assert_eq!(rule, direct, "{b}");
        }
    }

    #[test]
    fn p_minus_one_on_vacuum() {
        let terms = pieri_p_minus_one(&BiPartition::empty()).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].target, BiPartition::of(&[], &[1]));
        assert!(terms[0].coeff.is_one());
    }

    #[test]
    fn diagrammatic_forms() {
        let b = BiPartition::of(&[1], &[1]);
        let y = DiagramY::new(&b.lam, &b.mu);
        for t in pieri_expand(&b).unwrap() {
            assert_eq!(
                v_diagrammatic(&t.target, &y, ClosingRatio::Balanced).unwrap(),
                t.coeff
            );
        }
        let removal = BiPartition::of(&[1], &[]);
        assert_ne!(
            v_diagrammatic(&removal, &y, ClosingRatio::AsPrinted).unwrap(),
            v_remove(&Partition::empty(), &b.lam, &b.mu).unwrap()
        );
    }

    #[test]
    fn classical_rule_small() {
        let alpha = jack_alpha();
        let direct = classical_pieri_direct(&p(&[1])).unwrap();
        assert_eq!(direct[&p(&[2])], RatFunc::one());
        assert_eq!(
            direct[&p(&[1, 1])],
            classical_pieri(&p(&[1, 1]), &p(&[1]), &alpha).unwrap()
        );
    }
}
