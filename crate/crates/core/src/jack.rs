//! Jack–Laurent symmetric functions as eigenfunctions of the Laurent
//! operator, triangular in the monomial basis; their eigenvalues; the
//! `k = -1` limit and its determinant formula.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{factor_small, Coeff, Factored, ParamPoly, Params, RatFunc};
use crate::error::{Error, Result};
use crate::mbasis::{m_to_p, m_to_p_in, p_to_m};
use crate::ops::{Operator, OperatorKind};
use crate::partitions::{dominance_leq, ladder, BiPartition, Partition};
use crate::psym::{PMonomial, SymFunc};

/// A solved eigenfunction: monic in the monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct JackLaurent<C> {
    pub index: BiPartition,
    /// Coefficients `u_ν` in the monomial basis; `u_index = 1`.
    pub m_coeffs: BTreeMap<BiPartition, C>,
    pub p_form: SymFunc<C>,
    pub eigenvalue: C,
}

fn box_sum(p: &Partition, f: impl Fn(i64, i64) -> RatFunc) -> RatFunc {
    p.cells().fold(RatFunc::zero(), |acc, c| {
        acc + f(c.row as i64, c.col as i64)
    })
}

/// `E_{λ,μ} = Σλ_i² + Σμ_j² + kΣ(2i-1)λ_i + kΣ(2j-1)μ_j - k p0 (|λ|+|μ|)`.
pub fn eigenvalue(b: &BiPartition) -> RatFunc {
    let k = RatFunc::k();
    let mut out = RatFunc::zero();
    for p in [&b.lam, &b.mu] {
        for (i, &x) in p.parts().iter().enumerate() {
            let x = x as i64;
            out = out
                + RatFunc::from_i64(x * x)
                + k.clone() * RatFunc::from_i64((2 * i as i64 + 1) * x);
        }
    }
    out - k * RatFunc::p0() * RatFunc::from_i64(b.total() as i64)
}

/// Eigenvalue of the `s`-th integral: a box sum of
/// `[(j - 1/2) + k(i - 1/2) - k p0 / 2]^{s-1}`, with sign `(-1)^s` on `μ`.
pub fn eigenvalue_s(b: &BiPartition, s: u32) -> Result<RatFunc> {
    if s == 0 {
        return Err(Error::Invalid("s must be positive".into()));
    }
    let half = RatFunc::from_frac(1, 2);
    let k = RatFunc::k();
    let content = |i: i64, j: i64| -> RatFunc {
        let base = RatFunc::from_i64(j) - half.clone()
            + k.clone() * (RatFunc::from_i64(i) - half.clone())
            - k.clone() * RatFunc::p0() * half.clone();
        base.pow(s as i32 - 1).expect("nonnegative power")
    };
    let lam = box_sum(&b.lam, content);
    let mu = box_sum(&b.mu, content);
    Ok(if s.is_multiple_of(2) {
        lam + mu
    } else {
        lam - mu
    })
}

/// Eigenvalue of the extended operator on `w^l P_{λ,μ}`.
pub fn eigenvalue_ext(b: &BiPartition, l: u32) -> RatFunc {
    let l = RatFunc::from_i64(l as i64);
    eigenvalue(b) + RatFunc::p0() * l.clone() * l.clone() + RatFunc::from_i64(2 * b.weight()) * l
}

type Column = Arc<BTreeMap<BiPartition, RatFunc>>;

fn column_cache() -> &'static RwLock<HashMap<(OperatorKind, BiPartition), Column>> {
    static CACHE: OnceLock<RwLock<HashMap<(OperatorKind, BiPartition), Column>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The image of `m_ν` under the symbolic operator, in the monomial basis.
pub fn operator_column(kind: OperatorKind, nu: &BiPartition) -> Result<Column> {
    let key = (kind, nu.clone());
    if let Some(hit) = column_cache().read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let image = Operator::symbolic(kind).apply(&*m_to_p(nu)?)?;
    let col = Arc::new(p_to_m(&image, &Params::symbolic())?);
    column_cache().write().unwrap().insert(key, col.clone());
    Ok(col)
}

/// The ladder below `target` with the operator columns and diagonal
/// entries, after checking triangularity (and, when `expect_diagonal` is
/// set, the closed-form eigenvalues).
fn prepare(
    target: &BiPartition,
    kind: OperatorKind,
    expect_diagonal: bool,
) -> Result<(Vec<BiPartition>, Vec<Column>, Vec<RatFunc>)> {
    let rungs = ladder(target);
    let mut columns = Vec::with_capacity(rungs.len());
    let mut diag = Vec::with_capacity(rungs.len());
    for nu in &rungs {
        let col = operator_column(kind, nu)?;
        if let Some(row) = col.keys().find(|row| !dominance_leq(row, nu)) {
            return Err(Error::Triangularity {
                column: nu.clone(),
                row: row.clone(),
            });
        }
        let d = col.get(nu).cloned().unwrap_or_else(RatFunc::zero);
        if expect_diagonal {
            let e = eigenvalue(nu);
            if d != e {
                return Err(Error::Diagonal {
                    pair: nu.clone(),
                    found: d.to_string(),
                    expected: e.to_string(),
                });
            }
        }
        diag.push(d);
        columns.push(col);
    }
    Ok((rungs, columns, diag))
}

/// Triangular solve for the monic eigenfunction of `kind` indexed by
/// `target`, over any coefficient field.
fn solve<C: Coeff>(
    target: &BiPartition,
    kind: OperatorKind,
    params: &Params<C>,
    expect_diagonal: bool,
) -> Result<JackLaurent<C>> {
    let (rungs, columns, diag) = prepare(target, kind, expect_diagonal)?;
    let diag = diag
        .iter()
        .map(|d| params.embed(d))
        .collect::<Result<Vec<C>>>()?;
    let top = diag[0].clone();
    let mut u: Vec<C> = Vec::with_capacity(rungs.len());
    u.push(C::one());
    for (pos, nu) in rungs.iter().enumerate().skip(1) {
        let mut s = C::zero();
        for rho in 0..pos {
            if u[rho].is_zero() {
                continue;
            }
            if let Some(entry) = columns[rho].get(nu) {
                s = s + params.embed(entry)? * &u[rho];
            }
        }
        if s.is_zero() {
            u.push(C::zero());
            continue;
        }
        let gap = top.clone() - diag[pos].clone();
        if gap.is_zero() {
            return Err(Error::Resonance {
                target: target.clone(),
                below: nu.clone(),
            });
        }
        u.push(s.checked_div(&gap)?);
    }
    let mut m_coeffs = BTreeMap::new();
    let mut p_form = SymFunc::zero();
    for (nu, c) in rungs.iter().zip(u) {
        if c.is_zero() {
            continue;
        }
        p_form = &p_form + &m_to_p_in(nu, params)?.scale(&c);
        m_coeffs.insert(nu.clone(), c);
    }
    Ok(JackLaurent {
        index: target.clone(),
        m_coeffs,
        p_form,
        eigenvalue: top,
    })
}

/// The same solve with `k`, `p0` formal. Every denominator is a product of
/// eigenvalue gaps, so fractions are carried with factored denominators.
/// Falls back to [`solve`] when a gap does not split into known factors.
fn solve_symbolic(
    target: &BiPartition,
    kind: OperatorKind,
    expect_diagonal: bool,
) -> Result<Solved> {
    let generic = || -> Result<Solved> {
        Ok(Solved {
            jack: Arc::new(solve(target, kind, &Params::symbolic(), expect_diagonal)?),
            factored: None,
        })
    };
    let (rungs, columns, diag) = prepare(target, kind, expect_diagonal)?;
    let poly_of = |r: &RatFunc| r.den().is_one().then(|| r.num().clone());
    if diag.iter().any(|d| poly_of(d).is_none())
        || columns
            .iter()
            .any(|c| c.values().any(|v| poly_of(v).is_none()))
    {
        return generic();
    }
    let top = diag[0].clone();
    let mut u: Vec<Factored> = Vec::with_capacity(rungs.len());
    u.push(Factored::from_poly(ParamPoly::one()));
    for (pos, nu) in rungs.iter().enumerate().skip(1) {
        let mut s = Factored::default();
        for rho in 0..pos {
            if let Some(entry) = columns[rho].get(nu) {
                s = s.add(&u[rho].mul_poly(entry.num()));
            }
        }
        if s.is_zero() {
            u.push(s);
            continue;
        }
        let gap = top.clone() - diag[pos].clone();
        if gap.is_zero() {
            return Err(Error::Resonance {
                target: target.clone(),
                below: nu.clone(),
            });
        }
        let Some((c, factors)) = factor_small(gap.num()) else {
            return generic();
        };
        u.push(s.div(&c, &factors));
    }
    let mut m_coeffs = BTreeMap::new();
    let mut factored = Vec::new();
    let mut p_acc: BTreeMap<PMonomial, Factored> = BTreeMap::new();
    for (nu, c) in rungs.into_iter().zip(u) {
        if c.is_zero() {
            continue;
        }
        for (m, v) in m_to_p(&nu)?.iter() {
            let slot = p_acc.entry(m.clone()).or_default();
            *slot = slot.add(&c.mul_poly(v.num()));
        }
        m_coeffs.insert(nu.clone(), c.to_ratfunc());
        factored.push((nu, c));
    }
    let p_form = SymFunc::from_terms(
        p_acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| (m, v.to_ratfunc())),
    );
    Ok(Solved {
        jack: Arc::new(JackLaurent {
            index: target.clone(),
            m_coeffs,
            p_form,
            eigenvalue: top,
        }),
        factored: Some(Arc::new(factored)),
    })
}

/// Monomial coefficients with factored denominators, for exact sums
/// without GCDs.
pub(crate) type FactoredCoeffs = Arc<Vec<(BiPartition, Factored)>>;

#[derive(Clone)]
struct Solved {
    jack: Arc<JackLaurent<RatFunc>>,
    factored: Option<FactoredCoeffs>,
}

fn solved(kind: OperatorKind, b: &BiPartition) -> Result<Solved> {
    static CACHE: OnceLock<RwLock<HashMap<(OperatorKind, BiPartition), Solved>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (kind, b.clone());
    if let Some(hit) = cache.read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let s = solve_symbolic(b, kind, kind == OperatorKind::Laurent)?;
    cache.write().unwrap().insert(key, s.clone());
    Ok(s)
}

/// The monomial coefficients of the symbolic eigenfunction in factored
/// form, when the solve produced them.
pub(crate) fn factored_coeffs(
    kind: OperatorKind,
    b: &BiPartition,
) -> Result<Option<FactoredCoeffs>> {
    Ok(solved(kind, b)?.factored)
}

/// `P_{λ,μ}` over any coefficient field; numeric parameters may resonate.
pub fn jack_laurent_in<C: Coeff>(b: &BiPartition, params: &Params<C>) -> Result<JackLaurent<C>> {
    solve(b, OperatorKind::Laurent, params, true)
}

/// `P_{λ,μ}` with `k`, `p0` formal; memoized.
pub fn jack_laurent(b: &BiPartition) -> Result<Arc<JackLaurent<RatFunc>>> {
    Ok(solved(OperatorKind::Laurent, b)?.jack)
}

/// The classical Jack function `P_λ` (coupling `k`, Jack parameter `-1/k`),
/// from the stable trigonometric operator on `Λ⁺`.
pub fn classical_jack(lam: &Partition) -> Result<Arc<JackLaurent<RatFunc>>> {
    let b = BiPartition::new(lam.clone(), Partition::empty());
    Ok(solved(OperatorKind::TrigStable, &b)?.jack)
}

/// Complete symmetric function `h_i` (zero for `i < 0`).
pub fn complete_h(i: i64) -> SymFunc<RatFunc> {
    static CACHE: OnceLock<RwLock<Vec<SymFunc<RatFunc>>>> = OnceLock::new();
    if i < 0 {
        return SymFunc::zero();
    }
    let cache = CACHE.get_or_init(|| RwLock::new(vec![SymFunc::one()]));
    let i = i as usize;
    if let Some(h) = cache.read().unwrap().get(i) {
        return h.clone();
    }
    let mut hs = cache.write().unwrap();
    while hs.len() <= i {
        let n = hs.len();
        let mut acc = SymFunc::zero();
        for a in 1..=n {
            acc = &acc + &(&SymFunc::generator(a as i32) * &hs[n - a]);
        }
        let inv_n = RatFunc::from_frac(1, n as i64);
        hs.push(acc.scale(&inv_n));
    }
    hs[i].clone()
}

/// `h_i^*`, the star image of `h_i`.
pub fn complete_h_star(i: i64) -> SymFunc<RatFunc> {
    complete_h(i).star()
}

/// Determinant by fraction-free elimination; all divisions are exact in the
/// polynomial ring.
pub fn bareiss_det<C: Coeff>(mut a: Vec<Vec<SymFunc<C>>>) -> Result<SymFunc<C>> {
    let n = a.len();
    if n == 0 {
        return Ok(SymFunc::one());
    }
    let mut negate = false;
    let mut prev = SymFunc::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(SymFunc::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t
                    .exact_div(&prev)?
                    .ok_or(Error::Singular("fraction-free elimination"))?;
            }
            a[i][k] = SymFunc::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// The `(r+s)×(r+s)` matrix of complete functions: `μ`-rows of `h^*` above
/// `λ`-rows of `h`.
pub fn jacobi_trudy_matrix(b: &BiPartition) -> Vec<Vec<SymFunc<RatFunc>>> {
    let (r, s) = (b.lam.len() as i64, b.mu.len() as i64);
    let n = r + s;
    let mut rows = Vec::with_capacity(n as usize);
    for t in 1..=s {
        let mu = b.mu.part((s + 1 - t) as usize) as i64;
        rows.push((1..=n).map(|c| complete_h_star(mu + t - c)).collect());
    }
    for t in 1..=r {
        let lam = b.lam.part(t as usize) as i64;
        rows.push((1..=n).map(|c| complete_h(lam - t + c - s)).collect());
    }
    rows
}

pub fn jacobi_trudy_det(b: &BiPartition) -> Result<SymFunc<RatFunc>> {
    bareiss_det(jacobi_trudy_matrix(b))
}

/// `P_{λ,μ}` at `k = -1`, for generic `p0`.
pub fn jt_limit(b: &BiPartition) -> Result<SymFunc<RatFunc>> {
    let j = jack_laurent(b)?;
    let minus_one = RatFunc::from_i64(-1);
    let p0 = RatFunc::p0();
    let mut out = SymFunc::zero();
    for (m, c) in j.p_form.iter() {
        let v = c
            .substitute(&minus_one, &p0)
            .map_err(|_| Error::PoleAtMinusOne {
                pair: b.clone(),
                den: c.den().to_string(),
            })?;
        if v.depends_on_p0() {
            return Err(Error::ResidualP0Dependence {
                pair: b.clone(),
                coeff: v.to_string(),
            });
        }
        out.add_term(m.clone(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> SymFunc<RatFunc> {
        s.parse().unwrap()
    }

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        assert!(eigenvalue(&BiPartition::empty()).is_zero());
        assert_eq!(
            eigenvalue(&BiPartition::of(&[1], &[1])),
            r("2 + 2*k - 2*k*p0")
        );
        assert_eq!(
            eigenvalue(&BiPartition::of(&[1, 1], &[1])) - eigenvalue(&BiPartition::of(&[1], &[])),
            r("2 + 4*k - 2*k*p0")
        );
        let b = BiPartition::of(&[2, 1], &[1]);
        assert_eq!(eigenvalue_s(&b, 1).unwrap(), RatFunc::from_i64(2));
        assert_eq!(
            eigenvalue_s(&BiPartition::of(&[1], &[]), 3).unwrap(),
            r("(1/2 + k/2 - k*p0/2)^2")
        );
    }

    #[test]
    fn simplest_functions() {
        let p11 = jack_laurent(&BiPartition::of(&[1], &[1])).unwrap();
        assert_eq!(p11.p_form, sym("p_1*p_-1 - p0/(1 + k - k*p0)"));
        let p111 = jack_laurent(&BiPartition::of(&[1, 1], &[1])).unwrap();
        assert_eq!(
            p111.p_form,
            sym("1/2*(p_1^2 - p_2)*p_-1 - 2*(p0 - 1)/(2 + 4*k - 2*k*p0)*p_1")
        );
    }

    #[test]
    fn complete_functions() {
        assert_eq!(complete_h(0), SymFunc::one());
        assert!(complete_h(-3).is_zero());
        assert_eq!(complete_h(2), sym("1/2*p_1^2 + 1/2*p_2"));
        assert_eq!(complete_h_star(2), sym("1/2*p_-1^2 + 1/2*p_-2"));
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(
            jacobi_trudy_det(&BiPartition::of(&[1], &[1])).unwrap(),
            sym("p_1*p_-1 - 1")
        );
        assert_eq!(
            jacobi_trudy_det(&BiPartition::of(&[1], &[])).unwrap(),
            sym("p_1")
        );
        assert_eq!(
            jt_limit(&BiPartition::of(&[1], &[1])).unwrap(),
            sym("p_1*p_-1 - 1")
        );
    }

    #[test]
    fn factored_solve_matches_generic() {
        for b in BiPartition::all_up_to(2, 2) {
            let fast = jack_laurent(&b).unwrap();
            let slow = jack_laurent_in(&b, &Params::symbolic()).unwrap();
            assert_eq!(*fast, slow, "{b}");
        }
    }

    #[test]
    fn numeric_resonance_is_reported() {
        // E_{(1),(1)} = E_{∅,∅} when 1 + k - k p0 = 0, e.g. k = 1, p0 = 2
        let params = Params::numeric(crate::arith::rat(1), crate::arith::rat(2));
        let err = jack_laurent_in(&BiPartition::of(&[1], &[1]), &params).unwrap_err();
        assert!(matches!(err, Error::Resonance { .. }));
    }
}
