//! Brute-force oracles shared by the integration tests. None of these call
//! into the search or selection routines they are compared against.
#![allow(dead_code)]

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weakcross_core::setfam::{Block, Family, FamilyPair, GroundSet};
use weakcross_core::refutation::claim1_petals;
use weakcross_core::structures::Sunflower;
use weakcross_core::weakcross::{IntersectionMatrix, WeakCrossParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random `k`-uniform family with `count` distinct blocks (capped).
pub fn random_family(rng: &mut impl Rng, n: u32, k: u32, count: usize) -> Family {
    let ground = GroundSet::new(n).unwrap();
    let all: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() == k).collect();
    let count = count.min(all.len());
    let picked = rand::seq::index::sample(rng, all.len(), count);
    let blocks = picked.into_iter().map(|i| Block::from_bits(ground, all[i]).unwrap()).collect();
    Family::new(ground, k, blocks).unwrap()
}

pub fn random_pair(rng: &mut impl Rng, max_n: u32, max_k: u32, max_len: usize) -> FamilyPair {
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(1..=max_k.min(n));
    let kp = rng.gen_range(1..=max_k.min(n));
    let a = rng.gen_range(0..=max_len);
    let b = rng.gen_range(0..=max_len);
    FamilyPair::new(random_family(rng, n, k, a), random_family(rng, n, kp, b)).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, max_entry: u32) -> IntersectionMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let rows = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..=max_entry)).collect()).collect();
    IntersectionMatrix::from_rows(rows).unwrap()
}

/// Full double enumeration: every row `ℓ`-subset against every column
/// `ℓ`-subset in lexicographic order, keeping strict improvements only.
pub fn naive_min_grid_sum(m: &IntersectionMatrix, ell: usize) -> Option<(u64, Vec<usize>, Vec<usize>)> {
    let mut best: Option<(u64, Vec<usize>, Vec<usize>)> = None;
    for rows in (0..m.rows()).combinations(ell) {
        for cols in (0..m.cols()).combinations(ell) {
            let s: u64 = rows.iter().flat_map(|&i| cols.iter().map(move |&j| (i, j))).map(|(i, j)| m.get(i, j) as u64).sum();
            if best.as_ref().is_none_or(|b| s < b.0) {
                best = Some((s, rows.clone(), cols));
            }
        }
    }
    best
}

/// Definition-level check: `Some(true)` satisfied, `Some(false)` violated,
/// `None` vacuous.
pub fn naive_weak_cross(pair: &FamilyPair, params: WeakCrossParams) -> Option<bool> {
    let ell = params.ell() as usize;
    let (l, r) = (pair.left().blocks(), pair.right().blocks());
    if l.len() < ell || r.len() < ell {
        return None;
    }
    for rows in l.iter().combinations(ell) {
        for cols in r.iter().combinations(ell) {
            let s: u64 = rows.iter().flat_map(|a| cols.iter().map(move |b| a.meet(b) as u64)).sum();
            if s < params.threshold() {
                return Some(false);
            }
        }
    }
    Some(true)
}

pub fn naive_cross_t(pair: &FamilyPair, t: u32) -> bool {
    pair.left().iter().all(|a| pair.right().iter().all(|b| (a.bits() & b.bits()).count_ones() >= t))
}

/// Largest petal count of a sunflower with kernel exactly `kernel`, by
/// trying every subset of the blocks containing it.
pub fn naive_petals(family: &Family, kernel: u64) -> usize {
    let members: Vec<u64> = family.iter().map(|b| b.bits()).filter(|&b| b & kernel == kernel).collect();
    let mut best = 0;
    for mask in 0u32..1 << members.len() {
        let chosen: Vec<u64> = (0..members.len()).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]).collect();
        let ok = chosen.iter().tuple_combinations().all(|(a, b)| a & b == kernel);
        if ok {
            best = best.max(chosen.len());
        }
    }
    best
}

/// Lexicographically least kernel (as an element list) of size `t` over
/// `[n]` carrying at least `r` petals, with the maximum petal count.
pub fn naive_sunflower(family: &Family, t: u32, r: usize) -> Option<(Vec<u32>, usize)> {
    let n = family.n();
    for kernel in (1..=n).combinations(t as usize) {
        let bits = kernel.iter().fold(0u64, |acc, &e| acc | 1 << (e - 1));
        let p = naive_petals(family, bits);
        if p >= r {
            return Some((kernel, p));
        }
    }
    None
}

pub fn naive_matching_number(blocks: &[u64]) -> usize {
    let mut best = 0;
    for mask in 0u64..1 << blocks.len() {
        let chosen: Vec<u64> = (0..blocks.len()).filter(|&i| mask >> i & 1 == 1).map(|i| blocks[i]).collect();
        if chosen.iter().tuple_combinations().all(|(a, b)| a & b == 0) {
            best = best.max(chosen.len());
        }
    }
    best
}

/// Every pair of subfamilies of `C([n], k)` and `C([n], k')`; feasible means
/// not violated (vacuous pairs count). Returns the maximum product.
pub fn naive_max_product(n: u32, k: u32, kp: u32, params: WeakCrossParams) -> usize {
    let g = GroundSet::new(n).unwrap();
    let left_all = Family::complete(g, k).unwrap();
    let right_all = Family::complete(g, kp).unwrap();
    let subsets = |f: &Family| -> Vec<Family> {
        (0u64..1 << f.len())
            .map(|mask| f.subfamily(&(0..f.len()).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>()).unwrap())
            .collect()
    };
    let lefts = subsets(&left_all);
    let rights = subsets(&right_all);
    let mut best = 0;
    for l in &lefts {
        for r in &rights {
            let product = l.len() * r.len();
            if product <= best {
                continue;
            }
            let pair = FamilyPair::new(l.clone(), r.clone()).unwrap();
            if naive_weak_cross(&pair, params) != Some(false) {
                best = product;
            }
        }
    }
    best
}

pub struct Claim1Instance {
    pub left: Family,
    pub right: Family,
    pub sunflower: Sunflower,
    pub params: WeakCrossParams,
}

/// A planted sunflower with `(1 + k')ℓ` petals on a shuffled ground set,
/// plus random extra left blocks, and a right family with at least one
/// member avoiding the kernel.
pub fn claim1_instance(seed: u64) -> Claim1Instance {
    let mut rng = rng(seed);
    let t = rng.gen_range(1..=2u32);
    let k = rng.gen_range(t + 1..=4);
    let kp = rng.gen_range(1..=4u32);
    let ell = rng.gen_range(1..=3u32);
    let r = claim1_petals(kp, ell) as u32;
    let need = t + r * (k - t);
    let n = rng.gen_range(need.max(kp + t)..=64.min(need + 6));
    let g = GroundSet::new(n).unwrap();
    let mut perm: Vec<u32> = (1..=n).collect();
    perm.shuffle(&mut rng);
    let map = |e: u32| perm[e as usize - 1];
    let kernel = Block::from_elements(g, (1..=t).map(map)).unwrap();
    let mut petal_blocks = Vec::new();
    for i in 0..r {
        let start = t + i * (k - t);
        petal_blocks.push(Block::from_elements(g, (1..=t).chain(start + 1..=start + k - t).map(map)).unwrap());
    }
    let mut left_blocks = petal_blocks.clone();
    for _ in 0..rng.gen_range(0..4) {
        let b = random_block(&mut rng, g, k);
        if !left_blocks.contains(&b) {
            left_blocks.push(b);
        }
    }
    let left = Family::new(g, k, left_blocks).unwrap();
    let mut members: Vec<usize> = petal_blocks.iter().map(|b| left.position(b).unwrap()).collect();
    members.sort_unstable();
    let sunflower = Sunflower { kernel, petals: members.len(), members };

    let mut right_blocks: Vec<Block> = Vec::new();
    if kp > t && rng.gen_bool(0.5) {
        // enough kernel holders to take the d >= ℓ - 1 branch
        let outside: Vec<u32> = (1..=n).filter(|&e| !kernel.contains_element(e)).collect();
        for _ in 0..100 {
            if right_blocks.len() + 1 >= ell as usize {
                break;
            }
            let picks = rand::seq::index::sample(&mut rng, outside.len(), (kp - t) as usize);
            let elems = kernel.elements().into_iter().chain(picks.into_iter().map(|p| outside[p]));
            let b = Block::from_elements(g, elems).unwrap();
            if !right_blocks.contains(&b) {
                right_blocks.push(b);
            }
        }
    }
    let available = weakcross_core::setfam::binomial_u128(n as u64, kp as u64).unwrap() as usize;
    let target = (ell as usize + rng.gen_range(1..=4)).min(available);
    while right_blocks.len() < target {
        let b = random_block(&mut rng, g, kp);
        if !right_blocks.contains(&b) {
            right_blocks.push(b);
        }
    }
    if right_blocks.iter().all(|b| b.is_superset_of(&kernel)) {
        loop {
            let b = random_block(&mut rng, g, kp);
            if !b.is_superset_of(&kernel) && !right_blocks.contains(&b) {
                right_blocks.push(b);
                break;
            }
        }
    }
    let right = Family::new(g, kp, right_blocks).unwrap();
    Claim1Instance { left, right, sunflower, params: WeakCrossParams::new(ell, t).unwrap() }
}

pub fn random_block(rng: &mut impl Rng, g: GroundSet, k: u32) -> Block {
    let bits = rand::seq::index::sample(rng, g.size() as usize, k as usize).into_iter().fold(0u64, |a, p| a | 1 << p);
    Block::from_bits(g, bits).unwrap()
}

