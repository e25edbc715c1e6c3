//! Executable versions of the two constructive steps behind the product
//! bound.
//!
//! [`claim1_witness`] starts from a sunflower with kernel `K` in the left
//! family and a right member avoiding `K`. It peels petals away until `ℓ`
//! left members remain whose grid sum against a chosen right `ℓ`-tuple is at
//! most `ℓ²t − ℓ`.
//!
//! [`claim3_cover`] splits the right family by which `t`-subsets of `ℓ`
//! chosen left members it contains, leaving an exceptional part that must
//! stay below `ℓ` whenever the pair satisfies the condition.

use serde::Serialize;
use thiserror::Error;

use crate::setfam::{k_subsets, Block, Family, SetFamError};
use crate::structures::{validate_sunflower, StructureError, Sunflower};
use crate::weakcross::{WeakCrossParams, WitnessTuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefutationError {
    #[error("sunflower is not valid in the left family: {0}")]
    Sunflower(#[from] StructureError),
    #[error("kernel has {found} elements, expected t = {t}")]
    KernelSize { t: u32, found: u32 },
    #[error("sunflower has {found} petals, need at least (1 + k')ℓ = {required}")]
    TooFewPetals { required: usize, found: usize },
    #[error("every right member contains the kernel {0}")]
    NoAvoider(Block),
    #[error("right family has {found} members, need at least ℓ = {ell}")]
    RightTooSmall { ell: usize, found: usize },
    #[error("left families and right families live over different ground sets")]
    GroundMismatch,
    #[error("expected {ell} distinct left indices, got {got:?}")]
    LeftIndices { ell: usize, got: Vec<usize> },
    #[error("t must satisfy 1 <= t <= k")]
    BadT,
    #[error(transparent)]
    SetFam(#[from] SetFamError),
}

/// Every intermediate object of the sunflower-peeling argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim1Trace {
    pub kernel: Block,
    /// `r`, the number of sunflower members the peeling starts from.
    pub petals: usize,
    /// Right indices `F'_1, .., F'_ℓ` in selection order: the first `h`
    /// contain the kernel, the rest avoid it.
    pub right_chosen: Vec<usize>,
    /// Right members containing the kernel.
    pub d: usize,
    /// `min(d, ℓ − 1)`.
    pub h: usize,
    pub s0: Vec<usize>,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub witness: WitnessTuple,
}

impl Claim1Trace {
    /// `r − h(k' − t)`.
    pub fn s1_bound(&self, kprime: u32, t: u32) -> i64 {
        self.petals as i64 - self.h as i64 * (kprime as i64 - t as i64)
    }

    /// `r − h(k' − t) − k'(ℓ − h)`; equals `ℓ + ht` when `r = (1 + k')ℓ`.
    pub fn s2_bound(&self, kprime: u32, t: u32, ell: u32) -> i64 {
        self.s1_bound(kprime, t) - kprime as i64 * (ell as i64 - self.h as i64)
    }
}

/// `(1 + k')ℓ`, the petal count that forces every right member through the kernel.
pub fn claim1_petals(kprime: u32, ell: u32) -> usize {
    ((1 + kprime) * ell) as usize
}

/// Run the peeling argument on concrete families.
///
/// Right members: the first `h = min(d, ℓ − 1)` kernel-containing members
/// in index order, then the lowest-index avoiders until `ℓ` are chosen.
/// Stage 1 drops petals meeting `F'_i \ K` for `i ≤ h`; stage 2 drops petals
/// meeting `F'_j \ K` for `j > h`. The witness takes the first `ℓ` survivors.
pub fn claim1_witness(
    left: &Family,
    right: &Family,
    sf: &Sunflower,
    params: WeakCrossParams,
) -> Result<Claim1Trace, RefutationError> {
    let ell = params.ell() as usize;
    let t = params.t();
    if left.ground() != right.ground() {
        return Err(RefutationError::GroundMismatch);
    }
    validate_sunflower(left, sf)?;
    if sf.kernel.len() != t {
        return Err(RefutationError::KernelSize { t, found: sf.kernel.len() });
    }
    let required = claim1_petals(right.k(), params.ell());
    if sf.members.len() < required {
        return Err(RefutationError::TooFewPetals { required, found: sf.members.len() });
    }
    if right.len() < ell {
        return Err(RefutationError::RightTooSmall { ell, found: right.len() });
    }
    let kernel = sf.kernel;
    let (containing, avoiding): (Vec<usize>, Vec<usize>) =
        (0..right.len()).partition(|&j| right.blocks()[j].is_superset_of(&kernel));
    if avoiding.is_empty() {
        return Err(RefutationError::NoAvoider(kernel));
    }
    let d = containing.len();
    let h = d.min(ell - 1);
    let mut right_chosen: Vec<usize> = containing[..h].to_vec();
    right_chosen.extend(avoiding.iter().take(ell - h));
    debug_assert_eq!(right_chosen.len(), ell);

    let outside = |j: usize| right.blocks()[j].bits() & !kernel.bits();
    let petal = |i: usize| left.blocks()[i].bits() & !kernel.bits();
    let stage1_mask = right_chosen[..h].iter().fold(0u64, |acc, &j| acc | outside(j));
    let stage2_mask = right_chosen[h..].iter().fold(0u64, |acc, &j| acc | outside(j));

    let s0 = sf.members.clone();
    let s1: Vec<usize> = s0.iter().copied().filter(|&i| petal(i) & stage1_mask == 0).collect();
    let s2: Vec<usize> = s1.iter().copied().filter(|&i| petal(i) & stage2_mask == 0).collect();

    let rows: Vec<usize> = s2.iter().copied().take(ell).collect();
    let mut cols = right_chosen.clone();
    cols.sort_unstable();
    let achieved_sum = rows
        .iter()
        .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
        .map(|(i, j)| left.blocks()[i].meet(&right.blocks()[j]) as u64)
        .sum();
    let witness = WitnessTuple { rows, cols, achieved_sum };
    let trace = Claim1Trace { kernel, petals: s0.len(), right_chosen, d, h, s0, s1, s2, witness };

    // Guaranteed by the counting argument; a failure here is a bug.
    assert!(trace.s1.len() as i64 >= trace.s1_bound(right.k(), t));
    assert!(trace.s2.len() as i64 >= trace.s2_bound(right.k(), t, params.ell()));
    assert_eq!(trace.witness.rows.len(), ell);
    assert!(trace.witness.achieved_sum < params.threshold());
    Ok(trace)
}

/// One part `𝓕'(A)` of the cover: the right members containing `subset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverPart {
    pub subset: Block,
    pub members: Vec<usize>,
}

/// `𝓕' ⊆ 𝓔 ∪ ⋃ 𝓕'(A)` over `t`-subsets `A` of the chosen left members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverDecomposition {
    pub left_chosen: Vec<usize>,
    /// Right members meeting every chosen left member in at most `t − 1` points.
    pub exceptional: Vec<usize>,
    /// Ordered by the subset's element list; each subset appears once.
    pub parts: Vec<CoverPart>,
}

impl CoverDecomposition {
    /// Right indices not in `𝓔` and not in any part.
    pub fn uncovered(&self, right_len: usize) -> Vec<usize> {
        let mut covered = vec![false; right_len];
        for &j in self.exceptional.iter().chain(self.parts.iter().flat_map(|p| &p.members)) {
            covered[j] = true;
        }
        (0..right_len).filter(|&j| !covered[j]).collect()
    }

    pub fn covers(&self, right_len: usize) -> bool {
        self.uncovered(right_len).is_empty()
    }
}

pub fn claim3_cover(
    left: &Family,
    right: &Family,
    left_indices: &[usize],
    t: u32,
) -> Result<CoverDecomposition, RefutationError> {
    if left.ground() != right.ground() {
        return Err(RefutationError::GroundMismatch);
    }
    if t == 0 || t > left.k() {
        return Err(RefutationError::BadT);
    }
    let mut left_chosen = left_indices.to_vec();
    left_chosen.sort_unstable();
    left_chosen.dedup();
    if left_chosen.len() != left_indices.len() || left_chosen.iter().any(|&i| i >= left.len()) {
        return Err(RefutationError::LeftIndices { ell: left_indices.len(), got: left_indices.to_vec() });
    }
    let chosen: Vec<&Block> = left_chosen.iter().map(|&i| &left.blocks()[i]).collect();
    let exceptional = (0..right.len())
        .filter(|&j| chosen.iter().all(|b| b.meet(&right.blocks()[j]) < t))
        .collect();

    let mut subsets: Vec<Block> = Vec::new();
    for b in &chosen {
        let positions = b.elements();
        for sel in k_subsets(positions.len() as u32, t) {
            let elems = (0..positions.len()).filter(|&p| sel >> p & 1 == 1).map(|p| positions[p]);
            subsets.push(Block::from_elements(left.ground(), elems)?);
        }
    }
    subsets.sort_by(|a, b| a.lex_cmp(b));
    subsets.dedup();
    let parts = subsets
        .into_iter()
        .map(|subset| CoverPart {
            members: (0..right.len()).filter(|&j| right.blocks()[j].is_superset_of(&subset)).collect(),
            subset,
        })
        .collect();
    Ok(CoverDecomposition { left_chosen, exceptional, parts })
}
