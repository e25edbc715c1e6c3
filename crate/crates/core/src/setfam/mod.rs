//! Ground sets, uniform set families and the `.fam` text format.
//!
//! Elements are 1-based in every public API and in files. Internally a
//! [`Block`] is a single `u64` whose bit `i` stands for element `i + 1`,
//! which is why ground sets are capped at 64 elements.

mod binomial;
mod block;
mod family;
mod format;
mod subsets;

pub use binomial::{binomial, binomial_u128};
pub use block::{intersection_size, Block, GroundSet, MAX_GROUND};
pub use family::{Family, FamilyPair};
pub use format::{parse_family, parse_family_bytes, serialize_family, ParseError, ParseErrorKind};
pub use subsets::{k_subsets, KSubsets};

use thiserror::Error;

/// Violations of the set-family contracts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetFamError {
    #[error("ground set size {0} outside 1..=64")]
    GroundSize(u32),
    #[error("element {element} outside [1, {n}]")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("blocks must be nonempty")]
    EmptyBlock,
    #[error("blocks live over different ground sets ({0} vs {1})")]
    GroundMismatch(u32, u32),
    #[error("block size {found} differs from family uniformity {expected}")]
    SizeMismatch { expected: u32, found: u32 },
    #[error("uniformity k = {k} must satisfy 1 <= k <= n = {n}")]
    Uniformity { k: u32, n: u32 },
    #[error("duplicate block {0}")]
    DuplicateBlock(Block),
    #[error("index {index} out of range for family of {len} blocks")]
    IndexOutOfRange { index: usize, len: usize },
}
