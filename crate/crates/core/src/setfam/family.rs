use serde::Serialize;

use super::{Block, GroundSet, SetFamError};

/// A duplicate-free `k`-uniform family over a shared ground set.
///
/// Blocks are kept sorted by bit-vector value, so two families holding the
/// same blocks compare equal regardless of construction order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Family {
    ground: GroundSet,
    k: u32,
    blocks: Vec<Block>,
}

impl Family {
    pub fn new(ground: GroundSet, k: u32, mut blocks: Vec<Block>) -> Result<Self, SetFamError> {
        if k == 0 || k > ground.size() {
            return Err(SetFamError::Uniformity { k, n: ground.size() });
        }
        for b in &blocks {
            if b.ground() != ground {
                return Err(SetFamError::GroundMismatch(ground.size(), b.ground().size()));
            }
            if b.len() != k {
                return Err(SetFamError::SizeMismatch { expected: k, found: b.len() });
            }
        }
        blocks.sort_unstable();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(SetFamError::DuplicateBlock(w[0]));
        }
        Ok(Family { ground, k, blocks })
    }

    pub fn empty(ground: GroundSet, k: u32) -> Result<Self, SetFamError> {
        Self::new(ground, k, Vec::new())
    }

    /// Convenience constructor from 1-based element lists; `k` is taken
    /// from the first block.
    pub fn from_lists(n: u32, lists: &[&[u32]]) -> Result<Self, SetFamError> {
        let ground = GroundSet::new(n)?;
        let blocks = lists
            .iter()
            .map(|l| Block::from_elements(ground, l.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        let k = blocks.first().map_or(1, Block::len);
        Self::new(ground, k, blocks)
    }

    /// Every `k`-subset of the ground set.
    pub fn complete(ground: GroundSet, k: u32) -> Result<Self, SetFamError> {
        let blocks = super::k_subsets(ground.size(), k)
            .map(|bits| Block::from_bits(ground, bits))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ground, k, blocks)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.size()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Block> {
        self.blocks.get(index)
    }

    pub fn block(&self, index: usize) -> Result<&Block, SetFamError> {
        self.blocks
            .get(index)
            .ok_or(SetFamError::IndexOutOfRange { index, len: self.blocks.len() })
    }

    pub fn position(&self, block: &Block) -> Option<usize> {
        self.blocks.binary_search(block).ok()
    }

    pub fn contains(&self, block: &Block) -> bool {
        self.position(block).is_some()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Block> {
        self.blocks.iter()
    }

    /// The family restricted to the given indices (order-insensitive).
    pub fn subfamily(&self, indices: &[usize]) -> Result<Family, SetFamError> {
        let blocks = indices
            .iter()
            .map(|&i| self.block(i).copied())
            .collect::<Result<Vec<_>, _>>()?;
        Family::new(self.ground, self.k, blocks)
    }

    /// A new family with `block` added.
    pub fn with_block(&self, block: Block) -> Result<Family, SetFamError> {
        let mut blocks = self.blocks.clone();
        blocks.push(block);
        Family::new(self.ground, self.k, blocks)
    }

    /// A new family with the block at `index` removed.
    pub fn without(&self, index: usize) -> Result<Family, SetFamError> {
        self.block(index)?;
        let mut blocks = self.blocks.clone();
        blocks.remove(index);
        Ok(Family { ground: self.ground, k: self.k, blocks })
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a Block;
    type IntoIter = std::slice::Iter<'a, Block>;

    fn into_iter(self) -> Self::IntoIter {
        self.blocks.iter()
    }
}

/// Two families over the same ground set, possibly of different uniformity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyPair {
    left: Family,
    right: Family,
}

impl FamilyPair {
    pub fn new(left: Family, right: Family) -> Result<Self, SetFamError> {
        if left.ground() != right.ground() {
            return Err(SetFamError::GroundMismatch(left.n(), right.n()));
        }
        Ok(FamilyPair { left, right })
    }

    pub fn left(&self) -> &Family {
        &self.left
    }

    pub fn right(&self) -> &Family {
        &self.right
    }

    pub fn ground(&self) -> GroundSet {
        self.left.ground()
    }

    pub fn into_parts(self) -> (Family, Family) {
        (self.left, self.right)
    }
}
