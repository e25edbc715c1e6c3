mod common;

use itertools::Itertools;
use proptest::prelude::*;
use common::{claim1_instance, Claim1Instance};
use weakcross_core::refutation::{claim1_witness, claim3_cover, Claim1Trace};
use weakcross_core::setfam::FamilyPair;
use weakcross_core::weakcross::{check_weak_cross, WeakCrossParams};

fn check_trace(inst: &Claim1Instance, trace: &Claim1Trace) -> Result<(), TestCaseError> {
    let (ell, t, kp) = (inst.params.ell(), inst.params.t(), inst.right.k());
    prop_assert_eq!(trace.h, trace.d.min(ell as usize - 1));
    prop_assert!(trace.s1.len() as i64 >= trace.s1_bound(kp, t));
    prop_assert!(trace.s2.len() as i64 >= trace.s2_bound(kp, t, ell));
    prop_assert!(trace.s2.len() >= ell as usize + trace.h * t as usize);
    prop_assert!(trace.witness.achieved_sum <= (ell * ell * t - ell) as u64);
    for (pos, &j) in trace.right_chosen.iter().enumerate() {
        let holds = inst.right.blocks()[j].is_superset_of(&trace.kernel);
        prop_assert_eq!(holds, pos < trace.h);
    }
    let grid: u64 = trace.witness.rows.iter().cartesian_product(&trace.witness.cols)
        .map(|(&i, &j)| inst.left.blocks()[i].meet(&inst.right.blocks()[j]) as u64)
        .sum();
    prop_assert_eq!(grid, trace.witness.achieved_sum);
    let pair = FamilyPair::new(inst.left.clone(), inst.right.clone()).unwrap();
    let v = check_weak_cross(&pair, inst.params);
    prop_assert!(v.is_violated());
    prop_assert!(v.witness().unwrap().achieved_sum <= trace.witness.achieved_sum);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn claim1_traces_satisfy_stage_bounds(seed in any::<u64>()) {
        let inst = claim1_instance(seed);
        let trace = claim1_witness(&inst.left, &inst.right, &inst.sunflower, inst.params).unwrap();
        check_trace(&inst, &trace)?;
    }

    #[test]
    fn claim3_covers_and_bounds_exceptions(seed in any::<u64>(), ell in 1u32..=3, t in 1u32..=2) {
        let mut rng = common::rng(seed);
        let pair = common::random_pair(&mut rng, 8, 3, 7);
        let (l, r) = (pair.left(), pair.right());
        prop_assume!(t <= l.k() && l.len() >= ell as usize);
        let params = WeakCrossParams::new(ell, t).unwrap();
        let satisfied = check_weak_cross(&pair, params).is_satisfied();
        for rows in (0..l.len()).combinations(ell as usize).take(20) {
            let cover = claim3_cover(l, r, &rows, t).unwrap();
            prop_assert!(cover.covers(r.len()));
            for &j in &cover.exceptional {
                prop_assert!(rows.iter().all(|&i| l.blocks()[i].meet(&r.blocks()[j]) < t));
            }
            if satisfied {
                prop_assert!(cover.exceptional.len() < ell as usize);
            }
        }
    }
}

#[test]
fn claim1_covers_both_branches() {
    let (mut wide, mut narrow) = (0, 0);
    for seed in 0..200 {
        let inst = claim1_instance(seed);
        let trace = claim1_witness(&inst.left, &inst.right, &inst.sunflower, inst.params).unwrap();
        if trace.d + 1 >= inst.params.ell() as usize {
            wide += 1;
        } else {
            narrow += 1;
        }
    }
    assert!(wide > 0 && narrow > 0, "wide={wide} narrow={narrow}");
}

