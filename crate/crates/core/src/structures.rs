//! Sunflowers, matching numbers and the Erdős matching bound.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::setfam::{binomial, k_subsets, Block, Family, GroundSet, SetFamError};

/// Largest `C(n, k)` searched by [`max_family_no_matching`] without `force`.
pub const MAX_EXHAUSTIVE_BLOCKS: u64 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("kernel size t = {t} must satisfy 1 <= t < k = {k}")]
    KernelSize { t: u32, k: u32 },
    #[error("petal count must be positive")]
    ZeroPetals,
    #[error("ell must be positive")]
    ZeroEll,
    #[error("C({n},{k}) = {blocks} candidate blocks exceeds {limit}; pass force to search anyway")]
    TooLarge { n: u32, k: u32, blocks: u64, limit: u64 },
    #[error("invalid sunflower: {0}")]
    InvalidSunflower(String),
    #[error(transparent)]
    SetFam(#[from] SetFamError),
}

/// Members of a host family whose pairwise intersections all equal `kernel`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sunflower {
    pub kernel: Block,
    pub members: Vec<usize>,
    pub petals: usize,
}

impl Sunflower {
    pub fn kernel_size(&self) -> u32 {
        self.kernel.len()
    }
}

/// Re-checks a sunflower against its host family from scratch.
pub fn validate_sunflower(family: &Family, sf: &Sunflower) -> Result<(), StructureError> {
    let bad = |msg: String| Err(StructureError::InvalidSunflower(msg));
    if sf.petals != sf.members.len() {
        return bad(format!("petal count {} but {} members", sf.petals, sf.members.len()));
    }
    if sf.members.windows(2).any(|w| w[0] >= w[1]) {
        return bad("member indices not strictly increasing".into());
    }
    let blocks = sf
        .members
        .iter()
        .map(|&i| family.block(i).copied())
        .collect::<Result<Vec<_>, _>>()?;
    for (x, a) in blocks.iter().enumerate() {
        if !a.is_superset_of(&sf.kernel) {
            return bad(format!("member {a} misses kernel {}", sf.kernel));
        }
        for b in &blocks[x + 1..] {
            if a.bits() & b.bits() != sf.kernel.bits() {
                return bad(format!("{a} and {b} do not meet exactly in {}", sf.kernel));
            }
        }
    }
    Ok(())
}

/// Find a sunflower with kernel size exactly `t` and at least `r` petals.
///
/// Candidate kernels are the `t`-subsets of the blocks. They are tried in
/// lexicographic order of their element lists; for the first one that
/// carries at least `r` petals, a maximum petal set is returned with
/// lexicographically least member indices.
pub fn find_sunflower(family: &Family, t: u32, r: usize) -> Result<Option<Sunflower>, StructureError> {
    if t == 0 || t >= family.k() {
        return Err(StructureError::KernelSize { t, k: family.k() });
    }
    if r == 0 {
        return Err(StructureError::ZeroPetals);
    }
    let mut groups: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, b) in family.iter().enumerate() {
        for kernel in subsets_of(b.bits(), t) {
            groups.entry(kernel).or_default().push(i);
        }
    }
    let ground = family.ground();
    let mut kernels: Vec<(Block, Vec<usize>)> = groups
        .into_iter()
        .filter(|(_, members)| members.len() >= r)
        .map(|(bits, members)| (Block::from_bits(ground, bits).expect("subset of a block"), members))
        .collect();
    kernels.sort_by(|a, b| a.0.lex_cmp(&b.0));

    for (kernel, members) in kernels {
        let residuals: Vec<u64> = members.iter().map(|&i| family.blocks()[i].bits() & !kernel.bits()).collect();
        let best = max_disjoint(&residuals);
        if best.len() >= r {
            let members: Vec<usize> = best.into_iter().map(|x| members[x]).collect();
            let sf = Sunflower { kernel, petals: members.len(), members };
            debug_assert!(validate_sunflower(family, &sf).is_ok());
            return Ok(Some(sf));
        }
    }
    Ok(None)
}

/// All `t`-subsets of the set bits of `mask`.
fn subsets_of(mask: u64, t: u32) -> impl Iterator<Item = u64> {
    let positions: Vec<u32> = (0..64).filter(|&p| mask >> p & 1 == 1).collect();
    k_subsets(positions.len() as u32, t).map(move |sel| {
        let mut out = 0u64;
        let mut rest = sel;
        while rest != 0 {
            out |= 1 << positions[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    })
}

/// Pairwise disjoint blocks certifying a matching of size `size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingCertificate {
    #[serde(rename = "certificate")]
    pub indices: Vec<usize>,
    #[serde(rename = "nu")]
    pub size: usize,
}

/// Maximum number of pairwise disjoint blocks, with the lexicographically
/// least maximum set of indices.
pub fn matching_number(family: &Family) -> MatchingCertificate {
    let masks: Vec<u64> = family.iter().map(Block::bits).collect();
    let indices = max_disjoint(&masks);
    MatchingCertificate { size: indices.len(), indices }
}

/// Lexicographically least maximum set of pairwise disjoint nonzero masks.
///
/// Include-first depth-first search visits index sets in lexicographic
/// order, so only strict improvements are kept. The bound is the smaller of
/// the number of compatible candidates left and the number of free elements
/// they cover divided by the smallest mask size.
pub(crate) fn max_disjoint(masks: &[u64]) -> Vec<usize> {
    struct Search<'a> {
        masks: &'a [u64],
        min_size: u32,
        chosen: Vec<usize>,
        best: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, from: usize, used: u64) {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            let mut count = 0usize;
            let mut cover = 0u64;
            let mut first = None;
            for (j, &m) in self.masks.iter().enumerate().skip(from) {
                if m & used == 0 {
                    count += 1;
                    cover |= m;
                    first.get_or_insert(j);
                }
            }
            let Some(first) = first else { return };
            let bound = count.min((cover.count_ones() / self.min_size) as usize);
            if self.chosen.len() + bound <= self.best.len() {
                return;
            }
            for j in first..self.masks.len() {
                let m = self.masks[j];
                if m & used != 0 {
                    continue;
                }
                self.chosen.push(j);
                self.run(j + 1, used | m);
                self.chosen.pop();
                // a later start can only reach sets of size <= remaining
                let left = self.masks[j + 1..].iter().filter(|&&x| x & used == 0).count();
                if self.chosen.len() + left <= self.best.len() {
                    return;
                }
            }
        }
    }

    let min_size = masks.iter().map(|m| m.count_ones()).min().unwrap_or(1).max(1);
    let mut s = Search { masks, min_size, chosen: Vec::new(), best: Vec::new() };
    s.run(0, 0);
    s.best
}

/// Whether some `size` of the masks are pairwise disjoint and avoid `used`.
fn has_disjoint(masks: &[u64], size: usize, used: u64) -> bool {
    if size == 0 {
        return true;
    }
    masks.iter().enumerate().any(|(j, &m)| {
        m & used == 0 && masks.len() - j >= size && has_disjoint(&masks[j + 1..], size - 1, used | m)
    })
}

/// `C(n, k) − C(n − ℓ + 1, k)`.
pub fn erdos_bound(n: u32, k: u32, ell: u32) -> BigUint {
    let total = binomial(n as u64, k as u64);
    let avoid = match (n + 1).checked_sub(ell) {
        Some(m) => binomial(m as u64, k as u64),
        None => BigUint::default(),
    };
    total - avoid
}

/// Largest `F ⊆ C([n], k)` with no `ℓ` pairwise disjoint members, by exact
/// branch and bound over the blocks in canonical order. The witness is the
/// lexicographically least attaining family.
pub fn max_family_no_matching(n: u32, k: u32, ell: u32, force: bool) -> Result<(usize, Family), StructureError> {
    let ground = GroundSet::new(n)?;
    if ell == 0 {
        return Err(StructureError::ZeroEll);
    }
    let complete = Family::complete(ground, k)?;
    let blocks = complete.len() as u64;
    if blocks > MAX_EXHAUSTIVE_BLOCKS && !force {
        return Err(StructureError::TooLarge { n, k, blocks, limit: MAX_EXHAUSTIVE_BLOCKS });
    }
    let cands: Vec<u64> = complete.iter().map(Block::bits).collect();
    let need = ell as usize - 1;

    struct Search<'a> {
        cands: &'a [u64],
        need: usize,
        chosen: Vec<u64>,
        picked: Vec<usize>,
        best: Vec<usize>,
    }

    impl Search<'_> {
        // adding `m` keeps every matching below ℓ
        fn addable(&self, m: u64) -> bool {
            let disjoint: Vec<u64> = self.chosen.iter().copied().filter(|&c| c & m == 0).collect();
            !has_disjoint(&disjoint, self.need, 0)
        }

        fn run(&mut self, from: usize) {
            if self.picked.len() > self.best.len() {
                self.best = self.picked.clone();
            }
            let open: Vec<usize> = (from..self.cands.len()).filter(|&j| self.addable(self.cands[j])).collect();
            if self.picked.len() + open.len() <= self.best.len() {
                return;
            }
            for (pos, &j) in open.iter().enumerate() {
                if self.picked.len() + open.len() - pos <= self.best.len() {
                    return;
                }
                self.chosen.push(self.cands[j]);
                self.picked.push(j);
                self.run(j + 1);
                self.picked.pop();
                self.chosen.pop();
            }
        }
    }

    let mut s = Search { cands: &cands, need, chosen: Vec::new(), picked: Vec::new(), best: Vec::new() };
    if need > 0 {
        s.run(0);
    }
    let witness = complete.subfamily(&s.best)?;
    Ok((witness.len(), witness))
}
