use proptest::prelude::*;

use qmdecide_core::qm::{yu_feasible, YuBlock, YuFactor, YuInstance};

/// Exhaustive search over `x_i = k_i u_i` summing to `v`.
fn exhaustive(us: &[u64], v: u64) -> bool {
    fn go(us: &[u64], v: u64) -> bool {
        match us.split_first() {
            None => v == 0,
            Some((u, rest)) => (0..=v / u).any(|k| go(rest, v - k * u)),
        }
    }
    go(us, v)
}

fn block(v_dim: u64, delta_dim: u64, fs: &[(u64, u64)]) -> YuBlock {
    YuBlock { v_dim, delta_dim, factors: fs.iter().map(|&(m, d_dim)| YuFactor { m, d_dim }).collect() }
}

#[test]
fn every_small_single_block_matches_exhaustive_search() {
    let mut checked = 0;
    for v in 1..=12u64 {
        for t in 1..=4usize {
            // steps in 1..=6, nondecreasing to keep the count down
            let mut us = vec![1u64; t];
            loop {
                let inst = YuInstance { blocks: vec![block(v, 1, &us.iter().map(|&u| (u, 1)).collect::<Vec<_>>())] };
                let out = yu_feasible(&inst).unwrap();
                assert_eq!(out.feasible, exhaustive(&us, v), "v={v} us={us:?}");
                if let Some(w) = &out.witness {
                    assert!(inst.check_witness(w).unwrap());
                }
                checked += 1;
                let Some(i) = (0..t).rev().find(|&i| us[i] < 6) else { break };
                us[i] += 1;
                for j in i + 1..t {
                    us[j] = us[i];
                }
            }
        }
    }
    assert!(checked > 1000);
}

proptest! {
    #[test]
    fn multi_block_instances_match_exhaustive_search(
        blocks in prop::collection::vec(
            (1u64..=12, prop::sample::select(vec![1u64, 2, 4]), prop::collection::vec((1u64..=4, prop::sample::select(vec![1u64, 2, 4])), 1..=4)),
            1..=3,
        )
    ) {
        let inst = YuInstance {
            blocks: blocks
                .iter()
                .map(|(v, delta, fs)| {
                    // scale m so that m * d_dim is a multiple of delta
                    let fs: Vec<(u64, u64)> = fs.iter().map(|&(m, d)| (m * delta, d)).collect();
                    block(*v, *delta, &fs)
                })
                .collect(),
        };
        let steps = inst.steps().unwrap();
        let expect = inst.blocks.iter().zip(&steps).all(|(b, us)| exhaustive(us, b.v_dim));
        let out = yu_feasible(&inst).unwrap();
        prop_assert_eq!(out.feasible, expect);
        prop_assert_eq!(&out.steps, &steps);
        match &out.witness {
            Some(w) => prop_assert!(inst.check_witness(w).unwrap()),
            None => prop_assert!(!out.feasible),
        }
    }
}

#[test]
fn non_integral_steps_are_rejected() {
    let inst = YuInstance { blocks: vec![block(4, 4, &[(1, 2)])] };
    assert!(yu_feasible(&inst).is_err());
}
