//! Exact decision procedures for the weak cross-intersection condition and
//! its single-family analogue.
//!
//! For `ℓ` distinct rows and `ℓ` distinct columns of the intersection
//! matrix, the *grid sum* adds up the `ℓ²` selected entries. A pair of
//! families is ℓ-weakly cross t-intersecting when every grid sum is at least
//! `ℓ²t − ℓ + 1`; deciding it means finding the minimum grid sum.

use std::cmp::Ordering;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::setfam::{Family, FamilyPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeakCrossError {
    #[error("fewer than {ell} rows or columns ({rows}x{cols}); the condition is vacuous")]
    Vacuous { rows: usize, cols: usize, ell: usize },
    #[error("ell and t must be positive (got ell = {ell}, t = {t})")]
    InvalidParams { ell: u32, t: u32 },
    #[error("matrix rows have unequal lengths")]
    Ragged,
}

/// `M[i][j] = |F_i ∩ F'_j|`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl IntersectionMatrix {
    pub fn from_pair(pair: &FamilyPair) -> Self {
        Self::from_families(pair.left(), pair.right())
    }

    pub fn from_families(left: &Family, right: &Family) -> Self {
        let entries = left
            .iter()
            .flat_map(|a| right.iter().map(move |b| a.meet(b)))
            .collect();
        IntersectionMatrix { rows: left.len(), cols: right.len(), entries }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self, WeakCrossError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(WeakCrossError::Ragged);
        }
        let n_rows = rows.len();
        Ok(IntersectionMatrix { rows: n_rows, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        IntersectionMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Sum of `M[i][j]` over `i ∈ rows`, `j ∈ cols`.
    pub fn grid_sum(&self, rows: &[usize], cols: &[usize]) -> u64 {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j) as u64).sum::<u64>())
            .sum()
    }
}

/// The pair `(ℓ, t)` and its threshold `ℓ²t − ℓ + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeakCrossParams {
    ell: u32,
    t: u32,
}

impl WeakCrossParams {
    pub fn new(ell: u32, t: u32) -> Result<Self, WeakCrossError> {
        if ell == 0 || t == 0 {
            return Err(WeakCrossError::InvalidParams { ell, t });
        }
        Ok(WeakCrossParams { ell, t })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn threshold(&self) -> u64 {
        let ell = self.ell as u64;
        ell * ell * self.t as u64 - ell + 1
    }
}

/// `ℓ` rows and `ℓ` columns, both strictly increasing, with their grid sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WitnessTuple {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(rename = "sum")]
    pub achieved_sum: u64,
}

impl WitnessTuple {
    /// Order used to pick among candidates: smaller sum first, then
    /// lexicographically smaller rows, then columns.
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        self.achieved_sum
            .cmp(&other.achieved_sum)
            .then_with(|| self.rows.cmp(&other.rows))
            .then_with(|| self.cols.cmp(&other.cols))
    }
}

/// Smallest grid sum over all `ℓ`-subsets of rows and columns.
///
/// Only the smaller side is enumerated. For a fixed subset of that side the
/// grid sum splits into independent per-line partial sums on the other
/// side, so the best completion is the `ℓ` smallest partial sums (ties to
/// the lower index). The returned witness is the lexicographically least
/// (rows, then columns) among all minimizers.
pub fn min_grid_sum(m: &IntersectionMatrix, ell: usize) -> Result<(u64, WitnessTuple), WeakCrossError> {
    if ell == 0 || m.rows < ell || m.cols < ell {
        return Err(WeakCrossError::Vacuous { rows: m.rows, cols: m.cols, ell });
    }
    let witness = if m.cols < m.rows {
        scan(&m.transpose(), ell, true)
    } else {
        scan(m, ell, false)
    };
    debug_assert_eq!(witness.achieved_sum, m.grid_sum(&witness.rows, &witness.cols));
    Ok((witness.achieved_sum, witness))
}

/// Enumerates `ell`-subsets of rows of `m`; `transposed` means those rows are
/// columns of the caller's matrix.
fn scan(m: &IntersectionMatrix, ell: usize, transposed: bool) -> WitnessTuple {
    let best_from = |first: usize| -> WitnessTuple {
        let mut partial = vec![0u64; m.cols];
        let mut order: Vec<usize> = (0..m.cols).collect();
        let mut best: Option<WitnessTuple> = None;
        for rest in (first + 1..m.rows).combinations(ell - 1) {
            let mut chosen = Vec::with_capacity(ell);
            chosen.push(first);
            chosen.extend(rest);
            partial.iter_mut().for_each(|p| *p = 0);
            for &i in &chosen {
                for (p, &e) in partial.iter_mut().zip(m.row(i)) {
                    *p += e as u64;
                }
            }
            let key = |&j: &usize| (partial[j], j);
            order.select_nth_unstable_by_key(ell - 1, key);
            let mut other: Vec<usize> = order[..ell].to_vec();
            other.sort_unstable();
            let sum = other.iter().map(|&j| partial[j]).sum();
            let cand = if transposed {
                WitnessTuple { rows: other, cols: chosen, achieved_sum: sum }
            } else {
                WitnessTuple { rows: chosen, cols: other, achieved_sum: sum }
            };
            if best.as_ref().is_none_or(|b| cand.rank_cmp(b) == Ordering::Less) {
                best = Some(cand);
            }
        }
        best.expect("at least one subset per admissible first index")
    };
    let firsts = 0..=m.rows - ell;
    let reduce = |a: WitnessTuple, b: WitnessTuple| if b.rank_cmp(&a) == Ordering::Less { b } else { a };
    if m.rows * m.cols < 256 {
        firsts.map(best_from).reduce(reduce).expect("rows >= ell")
    } else {
        firsts.into_par_iter().map(best_from).reduce_with(reduce).expect("rows >= ell")
    }
}

/// Outcome of a weak-intersection check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict<W> {
    Satisfied { min_sum: u64 },
    Violated { witness: W },
    /// Fewer than `ℓ` members on some side; the condition holds by empty
    /// quantification.
    Vacuous,
}

impl<W> Verdict<W> {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied { .. })
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }

    pub fn is_vacuous(&self) -> bool {
        matches!(self, Verdict::Vacuous)
    }

    /// Satisfied or vacuous.
    pub fn holds(&self) -> bool {
        !self.is_violated()
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Violated { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Satisfied { .. } => "satisfied",
            Verdict::Violated { .. } => "violated",
            Verdict::Vacuous => "vacuous",
        }
    }
}

pub type CrossVerdict = Verdict<WitnessTuple>;
pub type SingleVerdict = Verdict<SingleWitness>;

/// `ℓ` distinct members of one family with their pairwise intersection sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingleWitness {
    pub members: Vec<usize>,
    pub sum: u64,
}

/// Flat JSON shape shared by both checks:
/// `{"verdict", "min_sum", "threshold", "witness"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport<W> {
    pub verdict: &'static str,
    pub min_sum: Option<u64>,
    pub threshold: u64,
    pub witness: Option<W>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembersWitness {
    pub members: Vec<usize>,
}

impl CrossVerdict {
    pub fn report(&self, threshold: u64) -> VerdictReport<GridWitness> {
        let (min_sum, witness) = match self {
            Verdict::Satisfied { min_sum } => (Some(*min_sum), None),
            Verdict::Violated { witness } => (
                Some(witness.achieved_sum),
                Some(GridWitness { rows: witness.rows.clone(), cols: witness.cols.clone() }),
            ),
            Verdict::Vacuous => (None, None),
        };
        VerdictReport { verdict: self.label(), min_sum, threshold, witness }
    }
}

impl SingleVerdict {
    pub fn report(&self, threshold: u64) -> VerdictReport<MembersWitness> {
        let (min_sum, witness) = match self {
            Verdict::Satisfied { min_sum } => (Some(*min_sum), None),
            Verdict::Violated { witness } => {
                (Some(witness.sum), Some(MembersWitness { members: witness.members.clone() }))
            }
            Verdict::Vacuous => (None, None),
        };
        VerdictReport { verdict: self.label(), min_sum, threshold, witness }
    }
}

/// Decide whether the pair is ℓ-weakly cross t-intersecting.
pub fn check_weak_cross(pair: &FamilyPair, params: WeakCrossParams) -> CrossVerdict {
    let m = IntersectionMatrix::from_pair(pair);
    check_matrix(&m, params)
}

/// [`check_weak_cross`] on a precomputed matrix.
pub fn check_matrix(m: &IntersectionMatrix, params: WeakCrossParams) -> CrossVerdict {
    match min_grid_sum(m, params.ell() as usize) {
        Err(_) => Verdict::Vacuous,
        Ok((value, _)) if value >= params.threshold() => Verdict::Satisfied { min_sum: value },
        Ok((_, witness)) => Verdict::Violated { witness },
    }
}

/// `|F ∩ F'| ≥ t` for every `F` on the left and `F'` on the right.
pub fn is_cross_t_intersecting(pair: &FamilyPair, t: u32) -> bool {
    pair.left().iter().all(|a| pair.right().iter().all(|b| a.meet(b) >= t))
}

/// `C(ℓ−1, 2) + 1`.
pub fn single_threshold(ell: u32) -> u64 {
    let e = ell as u64;
    if e < 3 {
        1
    } else {
        (e - 1) * (e - 2) / 2 + 1
    }
}

/// Decide whether every `ℓ` distinct members of `family` have pairwise
/// intersection sum at least `C(ℓ−1, 2) + 1`.
pub fn check_weak_single(family: &Family, ell: u32) -> SingleVerdict {
    let ell_us = ell as usize;
    if ell < 2 || family.len() < ell_us {
        return Verdict::Vacuous;
    }
    let (members, sum) = min_pair_sum_subset(family, ell_us);
    if sum >= single_threshold(ell) {
        Verdict::Satisfied { min_sum: sum }
    } else {
        Verdict::Violated { witness: SingleWitness { members, sum } }
    }
}

/// Lexicographically least `size`-subset minimizing the sum of pairwise
/// intersections. Prefix sums only grow as members are added, so a prefix
/// already at the incumbent cannot lead to a strictly better subset.
fn min_pair_sum_subset(family: &Family, size: usize) -> (Vec<usize>, u64) {
    let blocks = family.blocks();
    let m = blocks.len();
    let mut best_sum = u64::MAX;
    let mut best = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(size);

    fn rec(
        blocks: &[crate::setfam::Block],
        size: usize,
        from: usize,
        prefix: u64,
        stack: &mut Vec<usize>,
        best_sum: &mut u64,
        best: &mut Vec<usize>,
    ) {
        if stack.len() == size {
            if prefix < *best_sum {
                *best_sum = prefix;
                *best = stack.clone();
            }
            return;
        }
        let need = size - stack.len();
        for i in from..=blocks.len() - need {
            let add: u64 = stack.iter().map(|&j| blocks[j].meet(&blocks[i]) as u64).sum();
            if prefix + add >= *best_sum {
                continue;
            }
            stack.push(i);
            rec(blocks, size, i + 1, prefix + add, stack, best_sum, best);
            stack.pop();
            if *best_sum == 0 {
                return;
            }
        }
    }

    rec(blocks, size, 0, 0, &mut stack, &mut best_sum, &mut best);
    debug_assert!(m >= size);
    (best, best_sum)
}
