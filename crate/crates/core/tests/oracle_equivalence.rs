//! The two counting algorithms must agree: layered DP vs staircase DFS,
//! and the staircase/partition bijection must be exact.

use std::collections::BTreeSet;

use mdpart::partitions::{enumerate_partitions, is_valid_partition, PartitionCounter};
use mdpart::staircase::{
    enumerate_ideals, ideal_to_partition, oracle_count_table, partition_to_ideal,
};

#[test]
fn layered_dp_matches_staircase_dfs() {
    for (r, n_max) in [(2u32, 20usize), (3, 14), (4, 9)] {
        let counter = PartitionCounter::new(r, n_max as u64).unwrap();
        for punctual in [false, true] {
            let table = oracle_count_table(r, n_max, punctual).unwrap();
            for (n, dfs) in table.iter().enumerate() {
                let dp = if punctual {
                    counter.count_punctual(n as u64)
                } else {
                    counter.count(n as u64)
                };
                assert_eq!(&dp, dfs, "r={r} n={n} punctual={punctual}");
            }
        }
    }
}

#[test]
fn enumeration_length_matches_counts() {
    for r in 2..=4u32 {
        let counter = PartitionCounter::new(r, 8).unwrap();
        for punctual in [false, true] {
            for n in 0..=8u64 {
                let list = enumerate_partitions(r, n, punctual).unwrap();
                let count = if punctual {
                    counter.count_punctual(n)
                } else {
                    counter.count(n)
                };
                assert_eq!(
                    count,
                    list.len().into(),
                    "r={r} n={n} punctual={punctual}"
                );
            }
        }
    }
}

#[test]
fn bijection_roundtrip_exhaustive() {
    for r in 2..=4u32 {
        for punctual in [false, true] {
            for n in 0..=8usize {
                let ideals = enumerate_ideals(r, n, punctual).unwrap();
                let mut seen = BTreeSet::new();
                for ideal in &ideals {
                    let p = ideal_to_partition(ideal);
                    assert!(is_valid_partition(&p));
                    assert_eq!(p.weight() as usize, n);
                    assert_eq!(p.dim(), r);
                    assert_eq!(p.is_punctual(), punctual);
                    assert_eq!(&partition_to_ideal(&p), ideal, "roundtrip");
                    assert!(seen.insert(p.to_pairs()), "ideal_to_partition not injective");
                }
                assert_eq!(seen.len(), ideals.len());
            }
        }
    }
}

#[test]
fn bijection_hits_every_enumerated_partition() {
    // the staircase image and the layered enumeration are the same set
    for r in 2..=3u32 {
        for punctual in [false, true] {
            for n in 0..=6usize {
                let from_ideals: BTreeSet<_> = enumerate_ideals(r, n, punctual)
                    .unwrap()
                    .iter()
                    .map(|i| ideal_to_partition(i).to_pairs())
                    .collect();
                let from_layers: BTreeSet<_> = enumerate_partitions(r, n as u64, punctual)
                    .unwrap()
                    .iter()
                    .map(|p| p.to_pairs())
                    .collect();
                assert_eq!(from_ideals, from_layers, "r={r} n={n} punctual={punctual}");
            }
        }
    }
}

#[test]
fn punctual_diagrams_avoid_the_axis() {
    for r in 2..=4u32 {
        for n in 0..=6usize {
            for ideal in enumerate_ideals(r, n, true).unwrap() {
                for b in ideal.boxes() {
                    assert!(
                        b[..(r - 1) as usize].iter().any(|&x| x > 0),
                        "axis box {b:?} in punctual diagram"
                    );
                }
            }
        }
    }
}
