mod common;

use num_bigint::BigUint;
use weakcross_core::search::{search_max_product, SearchLimits};
use weakcross_core::weakcross::WeakCrossParams;

const CASES: &[(u32, u32, u32)] = &[(3, 1, 1), (3, 1, 2), (3, 2, 2), (4, 1, 1), (4, 1, 2), (4, 2, 2), (4, 2, 3), (4, 3, 3), (5, 1, 2), (5, 1, 4)];

#[test]
fn exhaustive_search_matches_double_powerset() {
    for &(n, k, kp) in CASES {
        for ell in 1..=3 {
            for t in 1..=2 {
                let params = WeakCrossParams::new(ell, t).unwrap();
                let r = search_max_product(n, k, kp, params, SearchLimits::default()).unwrap();
                let naive = common::naive_max_product(n, k, kp, params);
                assert_eq!(r.best_product, BigUint::from(naive), "({n},{k},{kp}) ell={ell} t={t}");
                assert!(r.exhaustive);
                assert!(r.best_product >= r.star_product);
                assert!(r.best_verdict.holds());
                let (l, rt) = (r.best_pair.left().len(), r.best_pair.right().len());
                assert_eq!(BigUint::from(l * rt), r.best_product);
            }
        }
    }
}

#[test]
fn bound_pruning_is_sound() {
    for &(n, k, kp) in &[(4, 2, 2), (5, 1, 2), (4, 1, 3), (5, 2, 2)] {
        for ell in 1..=2 {
            let params = WeakCrossParams::new(ell, 1).unwrap();
            let pruned = search_max_product(n, k, kp, params, SearchLimits::default()).unwrap();
            let full = search_max_product(n, k, kp, params, SearchLimits { max_nodes: None, prune: false }).unwrap();
            assert_eq!(pruned.best_product, full.best_product);
            assert_eq!(pruned.best_pair, full.best_pair, "lex-least witness differs");
            assert!(pruned.nodes_explored <= full.nodes_explored);
        }
    }
}
