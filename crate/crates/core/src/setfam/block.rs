use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::SetFamError;

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

/// The ground set `[n] = {1, .., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: u32) -> Result<Self, SetFamError> {
        if (1..=MAX_GROUND).contains(&n) {
            Ok(GroundSet(n as u8))
        } else {
            Err(SetFamError::GroundSize(n))
        }
    }

    pub fn size(self) -> u32 {
        self.0 as u32
    }

    /// Mask with one bit per element of the ground set.
    pub fn full_mask(self) -> u64 {
        if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }
}

/// A nonempty subset of a ground set, stored as a bit vector.
///
/// Ordering is by bit-vector value, which is the canonical block order
/// inside a [`Family`](super::Family).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    bits: u64,
    ground: GroundSet,
    size: u8,
}

impl Block {
    pub fn from_bits(ground: GroundSet, bits: u64) -> Result<Self, SetFamError> {
        if bits == 0 {
            return Err(SetFamError::EmptyBlock);
        }
        if bits & !ground.full_mask() != 0 {
            let element = 64 - bits.leading_zeros();
            return Err(SetFamError::ElementOutOfRange { element, n: ground.size() });
        }
        Ok(Block { bits, ground, size: bits.count_ones() as u8 })
    }

    /// Build from 1-based elements; repeated elements collapse.
    pub fn from_elements<I>(ground: GroundSet, elements: I) -> Result<Self, SetFamError>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > ground.size() {
                return Err(SetFamError::ElementOutOfRange { element: e, n: ground.size() });
            }
            bits |= 1 << (e - 1);
        }
        Self::from_bits(ground, bits)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Number of elements.
    pub fn len(&self) -> u32 {
        self.size as u32
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sorted 1-based elements.
    pub fn elements(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut rest = self.bits;
        while rest != 0 {
            out.push(rest.trailing_zeros() + 1);
            rest &= rest - 1;
        }
        out
    }

    pub fn contains_element(&self, e: u32) -> bool {
        (1..=64).contains(&e) && self.bits >> (e - 1) & 1 == 1
    }

    /// `other ⊆ self`.
    pub fn is_superset_of(&self, other: &Block) -> bool {
        other.bits & !self.bits == 0
    }

    /// `|self ∩ other|` without the ground-set check.
    #[inline]
    pub fn meet(&self, other: &Block) -> u32 {
        (self.bits & other.bits).count_ones()
    }

    pub fn intersection_size(&self, other: &Block) -> Result<u32, SetFamError> {
        if self.ground != other.ground {
            return Err(SetFamError::GroundMismatch(self.ground.size(), other.ground.size()));
        }
        Ok(self.meet(other))
    }

    pub fn is_disjoint(&self, other: &Block) -> bool {
        self.bits & other.bits == 0
    }

    /// Compares the sorted element lists lexicographically.
    pub fn lex_cmp(&self, other: &Block) -> Ordering {
        let a = self.elements();
        let b = other.elements();
        a.cmp(&b)
    }
}

/// Free-function form of [`Block::intersection_size`].
pub fn intersection_size(a: &Block, b: &Block) -> Result<u32, SetFamError> {
    a.intersection_size(b)
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits.cmp(&other.bits).then(self.ground.cmp(&other.ground))
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Block {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.elements().serialize(serializer)
    }
}
