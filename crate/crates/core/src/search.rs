//! Exhaustive search for the largest product `|F|·|F'|` over pairs that
//! satisfy the weak cross-intersection condition.
//!
//! The left family is grown over `C([n], k)` in canonical order; for every
//! left family visited, the right family is grown over `C([n], k')`. Adding
//! blocks can only create new violating grids, so an infeasible right
//! extension is never revisited in a larger family. Pairs with fewer than
//! `ℓ` members on a side satisfy the condition vacuously and count as
//! feasible.
//!
//! Work is split by the lowest left index. Every subtree is searched with an
//! incumbent seeded only by the star pair, so node counts and results do not
//! depend on the number of worker threads.

use std::cmp::Ordering;

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::setfam::{binomial, binomial_u128, Block, Family, FamilyPair, GroundSet, SetFamError};
use crate::weakcross::{check_weak_cross, CrossVerdict, WeakCrossParams};

/// Largest `C(n, k) + C(n, k')` searched without a node budget.
pub const MAX_EXHAUSTIVE_CANDIDATES: u128 = 40;

/// Largest `C(n, k) · C(n, k')` accepted at all.
pub const MAX_MEET_TABLE: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("C({n},{k}) + C({n},{kprime}) = {candidates} exceeds {limit}; set a node budget for a best-effort run")]
    NeedsBudget { n: u32, k: u32, kprime: u32, candidates: u128, limit: u128 },
    #[error("instance too large: {cells} intersection table cells")]
    TooLarge { cells: u128 },
    #[error(transparent)]
    SetFam(#[from] SetFamError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Node budget; `None` requires a small instance and searches it fully.
    pub max_nodes: Option<u64>,
    /// Bound pruning against the incumbent. Feasibility pruning is always on.
    pub prune: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: None, prune: true }
    }
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    #[serde(serialize_with = "as_decimal")]
    pub best_product: BigUint,
    pub best_pair: FamilyPair,
    #[serde(serialize_with = "as_decimal")]
    pub star_product: BigUint,
    pub nodes_explored: u64,
    pub exhaustive: bool,
    /// Verdict of `best_pair`, re-checked from scratch.
    pub best_verdict: CrossVerdict,
}

/// `C(n − t, k − t) · C(n − t, k' − t)`, zero when `t` exceeds a block size.
pub fn star_product(n: u32, k: u32, kprime: u32, t: u32) -> BigUint {
    if t > k || t > kprime || t > n {
        return BigUint::default();
    }
    let m = (n - t) as u64;
    binomial(m, (k - t) as u64) * binomial(m, (kprime - t) as u64)
}

pub fn search_max_product(
    n: u32,
    k: u32,
    kprime: u32,
    params: WeakCrossParams,
    limits: SearchLimits,
) -> Result<SearchResult, SearchError> {
    let ground = GroundSet::new(n)?;
    let left_all = Family::complete(ground, k)?;
    let right_all = Family::complete(ground, kprime)?;
    let candidates = left_all.len() as u128 + right_all.len() as u128;
    if limits.max_nodes.is_none() && candidates > MAX_EXHAUSTIVE_CANDIDATES {
        return Err(SearchError::NeedsBudget { n, k, kprime, candidates, limit: MAX_EXHAUSTIVE_CANDIDATES });
    }
    let cells = binomial_u128(n as u64, k as u64).unwrap_or(u128::MAX)
        .saturating_mul(binomial_u128(n as u64, kprime as u64).unwrap_or(u128::MAX));
    if cells > MAX_MEET_TABLE {
        return Err(SearchError::TooLarge { cells });
    }

    let ctx = Ctx::new(left_all.blocks(), right_all.blocks(), params, limits.prune);
    let seed = star_seed(&ctx, ground, k, kprime, params.t());

    let mut nodes = 1u64; // the empty left family
    let (best, exhaustive) = match limits.max_nodes {
        None => {
            let outcomes: Vec<Outcome> = (0..ctx.left.len())
                .into_par_iter()
                .map(|first| {
                    let mut w = Worker::new(&ctx, seed.clone(), None);
                    w.run_task(first);
                    Outcome { best: w.best, nodes: w.nodes }
                })
                .collect();
            let mut best = seed;
            for o in outcomes {
                nodes += o.nodes;
                best = best.better(o.best);
            }
            (best, true)
        }
        Some(budget) => {
            let mut w = Worker::new(&ctx, seed, Some(budget.saturating_sub(1)));
            for first in 0..ctx.left.len() {
                w.run_task(first);
                if w.exhausted {
                    break;
                }
            }
            nodes += w.nodes;
            (w.best, !w.exhausted)
        }
    };

    let left = left_all.subfamily(&best.left)?;
    let right = right_all.subfamily(&best.right)?;
    let best_pair = FamilyPair::new(left, right)?;
    let best_verdict = check_weak_cross(&best_pair, params);
    assert!(best_verdict.holds(), "search returned an infeasible pair");
    Ok(SearchResult {
        best_product: BigUint::from(best.product),
        best_pair,
        star_product: star_product(n, k, kprime, params.t()),
        nodes_explored: nodes,
        exhaustive,
        best_verdict,
    })
}

fn star_seed(ctx: &Ctx, ground: GroundSet, k: u32, kprime: u32, t: u32) -> Incumbent {
    if t > k || t > kprime {
        return Incumbent { product: 0, left: Vec::new(), right: Vec::new() };
    }
    let core = Block::from_elements(ground, 1..=t).expect("t <= k <= n");
    let pick = |blocks: &[Block]| -> Vec<usize> {
        (0..blocks.len()).filter(|&i| blocks[i].is_superset_of(&core)).collect()
    };
    let left = pick(ctx.left);
    let right = pick(ctx.right);
    Incumbent { product: (left.len() * right.len()) as u64, left, right }
}

/// Shared read-only data.
struct Ctx<'a> {
    left: &'a [Block],
    right: &'a [Block],
    meet: Vec<u8>,
    ell: usize,
    t: u32,
    threshold: u64,
    prune: bool,
}

impl<'a> Ctx<'a> {
    fn new(left: &'a [Block], right: &'a [Block], params: WeakCrossParams, prune: bool) -> Self {
        let meet = left
            .iter()
            .flat_map(|a| right.iter().map(move |b| a.meet(b) as u8))
            .collect();
        Ctx { left, right, meet, ell: params.ell() as usize, t: params.t(), threshold: params.threshold(), prune }
    }

    #[inline]
    fn meet(&self, a: usize, b: usize) -> u64 {
        self.meet[a * self.right.len() + b] as u64
    }

    /// Upper bound on the right family size for any left superset of `ls`.
    fn right_cap(&self, ls: &[usize]) -> usize {
        if self.ell == 1 {
            // with ℓ = 1 each right block must meet every left block in t points
            (0..self.right.len())
                .filter(|&b| ls.iter().all(|&a| self.meet(a, b) >= self.t as u64))
                .count()
        } else {
            self.right.len()
        }
    }
}

#[derive(Debug, Clone)]
struct Incumbent {
    product: u64,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Incumbent {
    fn rank_cmp(&self, other: &Incumbent) -> Ordering {
        other
            .product
            .cmp(&self.product)
            .then_with(|| self.left.cmp(&other.left))
            .then_with(|| self.right.cmp(&other.right))
    }

    fn better(self, other: Incumbent) -> Incumbent {
        if other.rank_cmp(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

struct Outcome {
    best: Incumbent,
    nodes: u64,
}

struct Worker<'c, 'a> {
    ctx: &'c Ctx<'a>,
    best: Incumbent,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

/// Per-left-family data for the right phase.
struct RowSums {
    /// `partial[s][b]`: sum over the rows of the `s`-th `ℓ`-subset of the left family.
    partial: Vec<Vec<u64>>,
}

impl<'c, 'a> Worker<'c, 'a> {
    fn new(ctx: &'c Ctx<'a>, seed: Incumbent, budget: Option<u64>) -> Self {
        Worker { ctx, best: seed, nodes: 0, budget, exhausted: false }
    }

    fn tick(&mut self) -> bool {
        if let Some(b) = self.budget {
            if self.nodes >= b {
                self.exhausted = true;
                return false;
            }
        }
        self.nodes += 1;
        true
    }

    fn offer(&mut self, ls: &[usize], rs: &[usize]) {
        let product = (ls.len() * rs.len()) as u64;
        if product < self.best.product {
            return;
        }
        let cand = Incumbent { product, left: ls.to_vec(), right: rs.to_vec() };
        if cand.rank_cmp(&self.best) == Ordering::Less {
            self.best = cand;
        }
    }

    /// All left families whose smallest index is `first`.
    fn run_task(&mut self, first: usize) {
        let mut ls = vec![first];
        self.left_dfs(first + 1, &mut ls);
    }

    fn left_dfs(&mut self, from: usize, ls: &mut Vec<usize>) {
        if !self.tick() {
            return;
        }
        let cap = self.ctx.right_cap(ls);
        if !self.ctx.prune || (ls.len() * cap) as u64 >= self.best.product {
            self.right_phase(ls);
            if self.exhausted {
                return;
            }
        }
        for j in from..self.ctx.left.len() {
            let reach = (ls.len() + self.ctx.left.len() - j) * cap;
            if self.ctx.prune && (reach as u64) < self.best.product {
                break;
            }
            ls.push(j);
            self.left_dfs(j + 1, ls);
            ls.pop();
            if self.exhausted {
                return;
            }
        }
    }

    fn right_phase(&mut self, ls: &[usize]) {
        let ell = self.ctx.ell;
        let sums = if ls.len() >= ell {
            let partial = ls
                .iter()
                .copied()
                .combinations(ell)
                .map(|rows| {
                    (0..self.ctx.right.len())
                        .map(|b| rows.iter().map(|&a| self.ctx.meet(a, b)).sum())
                        .collect()
                })
                .collect();
            Some(RowSums { partial })
        } else {
            None
        };
        let mut rs = Vec::new();
        self.right_dfs(0, ls, &mut rs, sums.as_ref());
    }

    /// Whether `rs ∪ {b}` still satisfies the condition against the left family.
    fn addable(&self, b: usize, rs: &[usize], sums: Option<&RowSums>) -> bool {
        let ell = self.ctx.ell;
        let Some(sums) = sums else { return true };
        if rs.len() + 1 < ell {
            return true;
        }
        let mut scratch: Vec<u64> = Vec::with_capacity(rs.len());
        sums.partial.iter().all(|p| {
            let rest = if ell == 1 {
                0
            } else {
                scratch.clear();
                scratch.extend(rs.iter().map(|&c| p[c]));
                scratch.select_nth_unstable(ell - 2);
                scratch[..ell - 1].iter().sum()
            };
            p[b] + rest >= self.ctx.threshold
        })
    }

    fn right_dfs(&mut self, from: usize, ls: &[usize], rs: &mut Vec<usize>, sums: Option<&RowSums>) {
        if !self.tick() {
            return;
        }
        self.offer(ls, rs);
        let open: Vec<usize> = (from..self.ctx.right.len()).filter(|&b| self.addable(b, rs, sums)).collect();
        for (pos, &b) in open.iter().enumerate() {
            let reach = ls.len() * (rs.len() + open.len() - pos);
            if self.ctx.prune && (reach as u64) < self.best.product {
                break;
            }
            rs.push(b);
            self.right_dfs(b + 1, ls, rs, sums);
            rs.pop();
            if self.exhausted {
                return;
            }
        }
    }
}
