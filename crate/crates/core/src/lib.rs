//! Exact verification and search tools for weakly cross t-intersecting
//! set families.

pub mod constructions;
pub mod refutation;
pub mod search;
pub mod setfam;
pub mod structures;
pub mod weakcross;

pub use setfam::{Block, Family, FamilyPair, GroundSet};
