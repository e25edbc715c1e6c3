mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;
use weakcross_core::constructions::make_sunflower;
use weakcross_core::setfam::GroundSet;
use weakcross_core::structures::{
    erdos_bound, find_sunflower, matching_number, max_family_no_matching, validate_sunflower,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn sunflower_matches_exhaustive(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(3..=10);
        let k = rng.gen_range(2..=4.min(n));
        let count = rng.gen_range(1..=10);
        let f = common::random_family(&mut rng, n, k, count);
        let t = rng.gen_range(1..k);
        let r = rng.gen_range(1..=4);
        let found = find_sunflower(&f, t, r).unwrap();
        let naive = common::naive_sunflower(&f, t, r);
        prop_assert_eq!(found.is_some(), naive.is_some());
        if let (Some(sf), Some((kernel, petals))) = (found, naive) {
            validate_sunflower(&f, &sf).unwrap();
            prop_assert_eq!(sf.kernel.elements(), kernel);
            prop_assert_eq!(sf.petals, petals);
        }
    }

    #[test]
    fn matching_matches_exhaustive(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=10);
        let k = rng.gen_range(1..=3.min(n));
        let count = rng.gen_range(0..=12);
        let f = common::random_family(&mut rng, n, k, count);
        let cert = matching_number(&f);
        let masks: Vec<u64> = f.iter().map(|b| b.bits()).collect();
        prop_assert_eq!(cert.size, common::naive_matching_number(&masks));
        prop_assert_eq!(cert.indices.len(), cert.size);
        for (x, &i) in cert.indices.iter().enumerate() {
            for &j in &cert.indices[x + 1..] {
                prop_assert!(f.blocks()[i].is_disjoint(&f.blocks()[j]));
            }
        }
    }
}

#[test]
fn sunflower_matching_numbers() {
    let g = GroundSet::new(16).unwrap();
    for u in 1..=5 {
        let with_kernel = make_sunflower(g, 3, 1, u).unwrap();
        assert_eq!(matching_number(&with_kernel).size, 1);
        let no_kernel = make_sunflower(g, 3, 0, u).unwrap();
        assert_eq!(matching_number(&no_kernel).size, u as usize);
    }
}

#[test]
fn erdos_agreement_at_desk_scale() {
    for (n, k, ell, value) in [(4, 2, 2, 3u32), (5, 2, 2, 4), (6, 2, 2, 5), (7, 2, 3, 11)] {
        let (size, witness) = max_family_no_matching(n, k, ell, false).unwrap();
        assert_eq!(size, value as usize);
        assert_eq!(erdos_bound(n, k, ell), BigUint::from(value));
        assert!(matching_number(&witness).size < ell as usize);
    }
}

#[test]
fn max_family_matches_brute_force() {
    use weakcross_core::setfam::Family;
    for (n, k, ell) in [(4, 2, 2), (4, 2, 3), (5, 2, 2), (4, 3, 2), (5, 3, 2)] {
        let all: Vec<u64> = Family::complete(GroundSet::new(n).unwrap(), k).unwrap().iter().map(|b| b.bits()).collect();
        let mut best = 0;
        for mask in 0u64..1 << all.len() {
            let chosen: Vec<u64> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            if chosen.len() > best && common::naive_matching_number(&chosen) < ell as usize {
                best = chosen.len();
            }
        }
        assert_eq!(max_family_no_matching(n, k, ell, false).unwrap().0, best, "({n},{k},{ell})");
    }
}
