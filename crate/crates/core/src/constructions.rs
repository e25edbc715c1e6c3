//! Named families: t-stars, the tightness pair, explicit sunflowers, the
//! covering family for the matching bound, and uniform random samples.
//!
//! Default element placement packs cores and petals at the low end of
//! `[n]`; every spec also takes explicit blocks.

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::setfam::{k_subsets, Block, Family, FamilyPair, GroundSet, SetFamError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("core of size {t} does not fit blocks of size {k} in [{n}]")]
    CoreSize { t: u32, k: u32, n: u32 },
    #[error("extra block must have size k' = {kprime}, got {found}")]
    ExtraSize { kprime: u32, found: u32 },
    #[error("extra block meets the core in {found} points, expected t - 1 = {expected}")]
    ExtraMeet { expected: u32, found: u32 },
    #[error("t must be positive")]
    ZeroCore,
    #[error("ground set [{n}] too small: need {need} elements")]
    GroundTooSmall { n: u32, need: u64 },
    #[error("sunflower needs t < k (or a single member), got t = {t}, k = {k}, u = {u}")]
    SunflowerShape { k: u32, t: u32, u: u32 },
    #[error("requested {count} distinct blocks but only {available} exist")]
    SampleTooLarge { count: usize, available: u128 },
    #[error(transparent)]
    SetFam(#[from] SetFamError),
}

/// All `k`-blocks containing a fixed core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSpec {
    pub ground: GroundSet,
    pub k: u32,
    pub core: Block,
}

impl StarSpec {
    /// Core `{1, .., t}`.
    pub fn packed(ground: GroundSet, k: u32, t: u32) -> Result<Self, ConstructionError> {
        let core = low_block(ground, t)?;
        let spec = StarSpec { ground, k, core };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let (t, n) = (self.core.len(), self.ground.size());
        if self.core.ground() != self.ground {
            return Err(SetFamError::GroundMismatch(n, self.core.ground().size()).into());
        }
        if self.k < t || self.k > n {
            return Err(ConstructionError::CoreSize { t, k: self.k, n });
        }
        Ok(())
    }
}

fn low_block(ground: GroundSet, t: u32) -> Result<Block, ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::ZeroCore);
    }
    if t > ground.size() {
        return Err(ConstructionError::GroundTooSmall { n: ground.size(), need: t as u64 });
    }
    Ok(Block::from_elements(ground, 1..=t)?)
}

/// Every `k`-block of the ground set containing `core`.
fn blocks_containing(ground: GroundSet, k: u32, core: u64) -> Vec<Block> {
    let free: Vec<u32> = (0..ground.size()).filter(|&p| core >> p & 1 == 0).collect();
    let need = k - core.count_ones();
    k_subsets(free.len() as u32, need)
        .map(|sel| {
            let mut bits = core;
            let mut rest = sel;
            while rest != 0 {
                bits |= 1 << free[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            Block::from_bits(ground, bits).expect("k >= 1 and within ground")
        })
        .collect()
}

/// `{F ∈ C([n], k) : core ⊆ F}`, of size `C(n − t, k − t)`.
pub fn make_star(spec: &StarSpec) -> Result<Family, ConstructionError> {
    spec.validate()?;
    let blocks = blocks_containing(spec.ground, spec.k, spec.core.bits());
    Ok(Family::new(spec.ground, spec.k, blocks)?)
}

/// The star pair on a common core: both families contain `core`.
pub fn make_star_pair(ground: GroundSet, k: u32, kprime: u32, core: Block) -> Result<FamilyPair, ConstructionError> {
    let left = make_star(&StarSpec { ground, k, core })?;
    let right = make_star(&StarSpec { ground, k: kprime, core })?;
    Ok(FamilyPair::new(left, right)?)
}

/// Stars on a core `T` plus one extra right block `U` with `|T ∩ U| = t − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightPairSpec {
    pub ground: GroundSet,
    pub k: u32,
    pub kprime: u32,
    pub core: Block,
    pub extra: Block,
}

impl TightPairSpec {
    /// `T = {1, .., t}` and `U = (T minus its largest element)` plus the
    /// smallest elements outside `T`.
    pub fn packed(ground: GroundSet, k: u32, kprime: u32, t: u32) -> Result<Self, ConstructionError> {
        let core = low_block(ground, t)?;
        let fresh = kprime.checked_sub(t - 1).filter(|&f| f >= 1).ok_or(ConstructionError::CoreSize {
            t,
            k: kprime,
            n: ground.size(),
        })?;
        let need = t as u64 + fresh as u64;
        if need > ground.size() as u64 {
            return Err(ConstructionError::GroundTooSmall { n: ground.size(), need });
        }
        let extra = Block::from_elements(ground, (1..t).chain(t + 1..=t + fresh))?;
        let spec = TightPairSpec { ground, k, kprime, core, extra };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let n = self.ground.size();
        let t = self.core.len();
        for k in [self.k, self.kprime] {
            if k < t || k > n {
                return Err(ConstructionError::CoreSize { t, k, n });
            }
        }
        if self.extra.ground() != self.ground || self.core.ground() != self.ground {
            return Err(SetFamError::GroundMismatch(n, self.extra.ground().size()).into());
        }
        if self.extra.len() != self.kprime {
            return Err(ConstructionError::ExtraSize { kprime: self.kprime, found: self.extra.len() });
        }
        let meet = self.extra.meet(&self.core);
        if meet != t - 1 {
            return Err(ConstructionError::ExtraMeet { expected: t - 1, found: meet });
        }
        Ok(())
    }
}

/// `(star(T, k), star(T, k') ∪ {U})`.
pub fn make_tight_pair(spec: &TightPairSpec) -> Result<FamilyPair, ConstructionError> {
    spec.validate()?;
    let left = make_star(&StarSpec { ground: spec.ground, k: spec.k, core: spec.core })?;
    let right = make_star(&StarSpec { ground: spec.ground, k: spec.kprime, core: spec.core })?;
    let right = right.with_block(spec.extra)?;
    Ok(FamilyPair::new(left, right)?)
}

/// Ground-set size above which the tight pair is known to reach grid sum
/// `ℓ²t − ℓ`: `k + k' + ℓ·max(k, k')`. Smaller `n` may still work; the
/// checker reports the actual value either way.
pub fn tight_pair_safe_n(k: u32, kprime: u32, ell: u32) -> u32 {
    k + kprime + ell * k.max(kprime)
}

/// Sunflower with kernel `{1, .., t}` and `u` petals, petal `i` taking the
/// next `k − t` unused elements. `t = 0` gives pairwise disjoint blocks.
pub fn make_sunflower(ground: GroundSet, k: u32, t: u32, u: u32) -> Result<Family, ConstructionError> {
    if k == 0 || t > k || (t == k && u > 1) {
        return Err(ConstructionError::SunflowerShape { k, t, u });
    }
    let need = t as u64 + u as u64 * (k - t) as u64;
    if need > ground.size() as u64 {
        return Err(ConstructionError::GroundTooSmall { n: ground.size(), need });
    }
    let petal = k - t;
    let blocks = (0..u)
        .map(|i| {
            let start = t + i * petal;
            Block::from_elements(ground, (1..=t).chain(start + 1..=start + petal))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Family::new(ground, k, blocks)?)
}

/// All `k`-blocks meeting `{1, .., ℓ − 1}`; size `C(n, k) − C(n − ℓ + 1, k)`.
pub fn make_covering(ground: GroundSet, k: u32, ell: u32) -> Result<Family, ConstructionError> {
    let n = ground.size();
    if k == 0 || k > n {
        return Err(SetFamError::Uniformity { k, n }.into());
    }
    if ell == 0 || ell - 1 > n {
        return Err(ConstructionError::GroundTooSmall { n, need: ell.saturating_sub(1) as u64 });
    }
    let hub = if ell == 1 { 0 } else { (1u64 << (ell - 1)) - 1 };
    let blocks = k_subsets(n, k)
        .filter(|&bits| bits & hub != 0)
        .map(|bits| Block::from_bits(ground, bits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Family::new(ground, k, blocks)?)
}

/// `count` distinct `k`-blocks drawn uniformly from `C([n], k)`.
pub fn random_family<R: Rng + ?Sized>(
    rng: &mut R,
    ground: GroundSet,
    k: u32,
    count: usize,
) -> Result<Family, ConstructionError> {
    let n = ground.size();
    if k == 0 || k > n {
        return Err(SetFamError::Uniformity { k, n }.into());
    }
    let available = crate::setfam::binomial_u128(n as u64, k as u64).unwrap_or(u128::MAX);
    if count as u128 > available {
        return Err(ConstructionError::SampleTooLarge { count, available });
    }
    let mut seen = std::collections::HashSet::with_capacity(count);
    let mut blocks = Vec::with_capacity(count);
    while blocks.len() < count {
        let bits = index::sample(rng, n as usize, k as usize)
            .into_iter()
            .fold(0u64, |acc, p| acc | 1 << p);
        if seen.insert(bits) {
            blocks.push(Block::from_bits(ground, bits)?);
        }
    }
    Ok(Family::new(ground, k, blocks)?)
}
