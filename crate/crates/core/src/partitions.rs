//! Partitions, pairs of partitions, the pair dominance order and the
//! two-sided diagram used by the Pieri coefficients.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::RatFunc;
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// A cell of a Young diagram: 1-based row and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p != 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `λ_i`, 1-based, zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// `λ'_j`, the length of column `j`.
    pub fn col_len(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.0.iter().take_while(|&&p| p as usize >= j).count() as u32
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1) as usize;
        Partition((1..=first).map(|j| self.col_len(j)).collect())
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (1..=p as usize).map(move |c| Cell { row: r + 1, col: c }))
    }

    /// Number of distinct part values.
    pub fn distinct_parts(&self) -> usize {
        let mut v = self.0.clone();
        v.dedup();
        v.len()
    }

    /// All partitions obtained by adding one cell, with the added cell,
    /// ordered by row.
    pub fn add_box_candidates(&self) -> Vec<(Partition, Cell)> {
        let mut out = Vec::new();
        for i in 1..=self.len() + 1 {
            if i == 1 || self.part(i) < self.part(i - 1) {
                let mut parts = self.0.clone();
                if i > parts.len() {
                    parts.push(1);
                } else {
                    parts[i - 1] += 1;
                }
                let col = self.part(i) as usize + 1;
                out.push((Partition(parts), Cell { row: i, col }));
            }
        }
        out
    }

    /// All partitions obtained by deleting one cell, with the deleted cell,
    /// ordered by row.
    pub fn remove_box_candidates(&self) -> Vec<(Partition, Cell)> {
        let mut out = Vec::new();
        for i in 1..=self.len() {
            if self.part(i) > self.part(i + 1) {
                let col = self.part(i) as usize;
                let mut parts = self.0.clone();
                parts[i - 1] -= 1;
                if parts[i - 1] == 0 {
                    parts.pop();
                }
                out.push((Partition(parts), Cell { row: i, col }));
            }
        }
        out
    }

    /// The cell by which `bigger` exceeds `self`, if exactly one.
    pub fn added_cell(&self, bigger: &Partition) -> Option<Cell> {
        self.add_box_candidates()
            .into_iter()
            .find(|(p, _)| p == bigger)
            .map(|(_, c)| c)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `n`.
    pub fn all_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }

    /// Prefix-sum domination `self ≤ other` (sizes may differ).
    pub fn prefix_dominated_by(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 1..=n {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A pair of partitions indexing Laurent monomial and Jack–Laurent functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiPartition {
    pub lam: Partition,
    pub mu: Partition,
}

impl BiPartition {
    pub fn new(lam: Partition, mu: Partition) -> Self {
        BiPartition { lam, mu }
    }

    /// Convenience constructor from part lists; panics on invalid input.
    pub fn of(lam: &[u32], mu: &[u32]) -> Self {
        BiPartition {
            lam: Partition::new(lam.to_vec()).expect("valid partition"),
            mu: Partition::new(mu.to_vec()).expect("valid partition"),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `|λ| - |μ|`.
    pub fn weight(&self) -> i64 {
        self.lam.size() as i64 - self.mu.size() as i64
    }

    /// `|λ| + |μ|`.
    pub fn total(&self) -> u32 {
        self.lam.size() + self.mu.size()
    }

    pub fn swapped(&self) -> Self {
        BiPartition {
            lam: self.mu.clone(),
            mu: self.lam.clone(),
        }
    }

    /// Key of a fixed linear extension of the dominance order: larger keys
    /// come first in a ladder.
    pub fn order_key(&self) -> (u32, &Partition, &Partition) {
        (self.total(), &self.lam, &self.mu)
    }

    /// Total order refining [`dominance_leq`]: `Greater` means earlier in a
    /// ladder.
    pub fn ladder_cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }

    /// Every pair with `|λ| ≤ a` and `|μ| ≤ b`.
    pub fn all_up_to(a: u32, b: u32) -> Vec<BiPartition> {
        let mus = Partition::all_up_to(b);
        Partition::all_up_to(a)
            .into_iter()
            .flat_map(|l| {
                mus.iter()
                    .map(move |m| BiPartition::new(l.clone(), m.clone()))
            })
            .collect()
    }
}

impl fmt::Display for BiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lam, self.mu)
    }
}

/// `a ⪯ b`: equal weight and prefix domination in both components.
pub fn dominance_leq(a: &BiPartition, b: &BiPartition) -> bool {
    a.weight() == b.weight() && a.lam.prefix_dominated_by(&b.lam) && a.mu.prefix_dominated_by(&b.mu)
}

/// All pairs `⪯ b`, sorted so that every pair precedes the pairs below it.
pub fn ladder(b: &BiPartition) -> Vec<BiPartition> {
    let (d, e) = (b.lam.size(), b.mu.size());
    let mut out = Vec::new();
    for r in 0..=d.min(e) {
        for lam in Partition::all_of_size(d - r) {
            if !lam.prefix_dominated_by(&b.lam) {
                continue;
            }
            for mu in Partition::all_of_size(e - r) {
                if mu.prefix_dominated_by(&b.mu) {
                    out.push(BiPartition::new(lam.clone(), mu));
                }
            }
        }
    }
    out.sort_by(|x, y| y.ladder_cmp(x));
    out
}

/// A cell of the two-sided diagram, in (column, row) coordinates; either
/// coordinate may be negative, neither is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YCell {
    pub j: i64,
    pub i: i64,
}

/// The figure made of `λ` in the positive quadrant, `μ` rotated into the
/// negative quadrant, and the rectangle between them.
///
/// The rectangle heights default to `l(λ)` and `l(μ)`; both may be enlarged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramY {
    pub lam: Partition,
    pub mu: Partition,
    pub height_pos: usize,
    pub height_neg: usize,
}

impl DiagramY {
    pub fn new(lam: &Partition, mu: &Partition) -> Self {
        DiagramY {
            lam: lam.clone(),
            mu: mu.clone(),
            height_pos: lam.len(),
            height_neg: mu.len(),
        }
    }

    /// The same figure inside a taller rectangle.
    pub fn enlarged(&self, height_pos: usize, height_neg: usize) -> Result<Self> {
        if height_pos < self.lam.len() || height_neg < self.mu.len() {
            return Err(Error::Invalid(
                "rectangle must contain the figure".to_string(),
            ));
        }
        Ok(DiagramY {
            height_pos,
            height_neg,
            ..self.clone()
        })
    }

    /// Row function `y_i`.
    pub fn y(&self, i: i64) -> i64 {
        match i.cmp(&0) {
            Ordering::Greater => self.lam.part(i as usize) as i64,
            Ordering::Less => -(self.mu.part((-i) as usize) as i64),
            Ordering::Equal => 0,
        }
    }

    /// Column function `y'_j`.
    pub fn y_col(&self, j: i64) -> i64 {
        match j.cmp(&0) {
            Ordering::Greater => self.lam.col_len(j as usize) as i64,
            Ordering::Less => -(self.mu.col_len((-j) as usize) as i64),
            Ordering::Equal => 0,
        }
    }

    pub fn region_lam(&self) -> Vec<YCell> {
        self.lam
            .cells()
            .map(|c| YCell {
                j: c.col as i64,
                i: c.row as i64,
            })
            .collect()
    }

    pub fn region_mu(&self) -> Vec<YCell> {
        self.mu
            .cells()
            .map(|c| YCell {
                j: -(c.col as i64),
                i: -(c.row as i64),
            })
            .collect()
    }

    /// The rectangle of rows `1..=l(λ)` and columns `-μ_1..=-1`.
    pub fn region_rect(&self) -> Vec<YCell> {
        let width = self.mu.part(1) as i64;
        let mut out = Vec::new();
        for i in 1..=self.lam.len() as i64 {
            for j in -width..=-1 {
                out.push(YCell { j, i });
            }
        }
        out
    }

    /// `c_Y(□, x) = y_i - j - k(y'_j - i) + x`.
    pub fn content(&self, cell: YCell, x: &RatFunc) -> RatFunc {
        let a = self.y(cell.i) - cell.j;
        let b = self.y_col(cell.j) - cell.i;
        RatFunc::from_i64(a) - RatFunc::k() * RatFunc::from_i64(b) + x.clone()
    }

    /// Cells of column `j` strictly below the added cell at row `i` of `λ`.
    pub fn pi1(&self, added: Cell) -> Result<Vec<YCell>> {
        self.check_addable(added)?;
        Ok((1..added.row as i64)
            .map(|r| YCell {
                j: added.col as i64,
                i: r,
            })
            .collect())
    }

    /// Empty cells of the negative rectangle in the column of a removable
    /// cell of `μ`.
    pub fn pi2(&self, removed: Cell) -> Result<Vec<YCell>> {
        self.check_removable(removed)?;
        let j = -(removed.col as i64);
        let bottom = -(self.mu.col_len(removed.col) as i64);
        Ok((-(self.height_neg as i64)..bottom)
            .map(|r| YCell { j, i: r })
            .collect())
    }

    /// Cells of the positive rectangle in the column of a removable cell of
    /// `μ`.
    pub fn pi3(&self, removed: Cell) -> Result<Vec<YCell>> {
        self.check_removable(removed)?;
        let j = -(removed.col as i64);
        Ok((1..=self.height_pos as i64)
            .map(|r| YCell { j, i: r })
            .collect())
    }

    fn check_addable(&self, c: Cell) -> Result<()> {
        if self.lam.add_box_candidates().iter().any(|(_, b)| *b == c) {
            Ok(())
        } else {
            Err(Error::BoxMismatch {
                row: c.row as i64,
                col: c.col as i64,
                expected: "addable",
                partition: self.lam.to_string(),
            })
        }
    }

    fn check_removable(&self, c: Cell) -> Result<()> {
        if self.mu.remove_box_candidates().iter().any(|(_, b)| *b == c) {
            Ok(())
        } else {
            Err(Error::BoxMismatch {
                row: c.row as i64,
                col: c.col as i64,
                expected: "removable",
                partition: self.mu.to_string(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn box_candidates() {
        assert_eq!(
            Partition::empty().add_box_candidates(),
            vec![(p(&[1]), Cell { row: 1, col: 1 })]
        );
        assert_eq!(
            p(&[2, 1]).add_box_candidates(),
            vec![
                (p(&[3, 1]), Cell { row: 1, col: 3 }),
                (p(&[2, 2]), Cell { row: 2, col: 2 }),
                (p(&[2, 1, 1]), Cell { row: 3, col: 1 }),
            ]
        );
        assert_eq!(
            p(&[1]).remove_box_candidates(),
            vec![(Partition::empty(), Cell { row: 1, col: 1 })]
        );
    }

    #[test]
    fn small_ladders() {
        assert_eq!(ladder(&BiPartition::empty()), vec![BiPartition::empty()]);
        assert_eq!(
            ladder(&BiPartition::of(&[1], &[1])),
            vec![BiPartition::of(&[1], &[1]), BiPartition::empty()]
        );
        assert_eq!(
            ladder(&BiPartition::of(&[1, 1], &[1])),
            vec![BiPartition::of(&[1, 1], &[1]), BiPartition::of(&[1], &[])]
        );
    }

    #[test]
    fn dominance_examples() {
        let a = BiPartition::of(&[1, 1], &[]);
        let b = BiPartition::of(&[2], &[]);
        assert!(dominance_leq(&a, &b));
        assert!(!dominance_leq(&b, &a));
        assert!(dominance_leq(
            &BiPartition::empty(),
            &BiPartition::of(&[1], &[1])
        ));
    }

    #[test]
    fn figure_regions() {
        let y = DiagramY::new(&p(&[6, 5, 4, 2, 1]), &p(&[7, 3, 2, 1, 1]));
        assert_eq!(y.region_lam().len(), 18);
        assert_eq!(y.region_mu().len(), 14);
        assert_eq!(y.region_rect().len(), 35);
        assert_eq!(y.pi1(Cell { row: 4, col: 3 }).unwrap().len(), 3);
        let del = Cell { row: 2, col: 3 };
        assert_eq!(y.pi2(del).unwrap().len(), 3);
        assert_eq!(y.pi3(del).unwrap().len(), 5);
        assert!(y.pi1(Cell { row: 2, col: 2 }).is_err());

        let lone = DiagramY::new(&Partition::empty(), &p(&[1]));
        assert!(lone.pi3(Cell { row: 1, col: 1 }).unwrap().is_empty());
    }

    #[test]
    fn row_and_column_functions() {
        let y = DiagramY::new(&p(&[2, 1]), &p(&[3]));
        assert_eq!(y.y(1), 2);
        assert_eq!(y.y(-1), -3);
        assert_eq!(y.y(3), 0);
        assert_eq!(y.y_col(1), 2);
        assert_eq!(y.y_col(-3), -1);
        assert_eq!(y.y_col(-4), 0);
    }
}
