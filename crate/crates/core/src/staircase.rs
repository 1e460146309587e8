//! Brute-force enumeration of monomial-ideal staircases.
//!
//! A staircase is the diagram of exponent vectors of the standard monomials
//! outside a monomial ideal: a finite downward-closed set of r-tuples. These
//! diagrams are the torus fixed points of the punctual Hilbert scheme of C^r
//! (colength-n monomial ideals) and, in the punctual variant, of the moduli
//! of curve-plus-points germs (monomial ideals I inside (z_1,...,z_{r-1}) of
//! colength n). This module is the oracle the layered partition counter is
//! cross-checked against; it shares no code with it.
//!
//! Enumeration grows a diagram one box at a time, adding only boxes that are
//! addable (the diagram stays downward closed) and lexicographically greater
//! than the last box added. Every diagram is reached exactly once, through
//! its lex-sorted box sequence, so the DFS is duplicate-free by construction.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partitions::{MultiIndex, MultiPartition};

/// The staircase diagram of a monomial ideal: the boxes *not* in the ideal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StaircaseIdeal {
    dim: u32,
    punctual: bool,
    boxes: Vec<Vec<u32>>, // lex-sorted
}

impl StaircaseIdeal {
    /// Validates region membership and downward closure, then stores the
    /// boxes lex-sorted.
    pub fn new(dim: u32, punctual: bool, mut boxes: Vec<Vec<u32>>) -> Result<Self> {
        if dim < 1 || (punctual && dim < 2) {
            return Err(Error::InvalidArgument(format!(
                "staircase dimension must be >= 1 (>= 2 when punctual), got {dim}"
            )));
        }
        for b in &boxes {
            if b.len() != dim as usize {
                return Err(Error::InvalidArgument(format!(
                    "box {b:?} does not have {dim} coordinates"
                )));
            }
            if !in_region(b, punctual) {
                return Err(Error::InvalidArgument(format!(
                    "box {b:?} lies on the deleted axis of the punctual region"
                )));
            }
        }
        boxes.sort();
        boxes.dedup();
        let ideal = Self {
            dim,
            punctual,
            boxes,
        };
        if !ideal.is_downward_closed() {
            return Err(Error::InvalidArgument(
                "diagram is not downward closed".into(),
            ));
        }
        Ok(ideal)
    }

    fn from_sorted_unchecked(dim: u32, punctual: bool, boxes: Vec<Vec<u32>>) -> Self {
        debug_assert!(boxes.windows(2).all(|w| w[0] < w[1]));
        Self {
            dim,
            punctual,
            boxes,
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_punctual(&self) -> bool {
        self.punctual
    }

    /// Number of boxes = colength of the ideal.
    pub fn colength(&self) -> usize {
        self.boxes.len()
    }

    pub fn boxes(&self) -> &[Vec<u32>] {
        &self.boxes
    }

    pub fn is_downward_closed(&self) -> bool {
        let members: HashSet<&[u32]> = self.boxes.iter().map(|b| b.as_slice()).collect();
        self.boxes.iter().all(|b| {
            (0..b.len()).all(|t| {
                if b[t] == 0 {
                    return true;
                }
                let mut pred = b.clone();
                pred[t] -= 1;
                !in_region(&pred, self.punctual) || members.contains(pred.as_slice())
            })
        })
    }

    /// Minimal monomial generators of the ideal, as exponent vectors. These
    /// are the minimal boxes outside the diagram (outside the deleted axis,
    /// in the punctual case), lex-sorted.
    pub fn minimal_generators(&self) -> Vec<Vec<u32>> {
        let members: HashSet<&[u32]> = self.boxes.iter().map(|b| b.as_slice()).collect();
        let mut candidates: BTreeSet<Vec<u32>> = minimal_boxes(self.dim, self.punctual)
            .into_iter()
            .collect();
        for b in &self.boxes {
            for t in 0..b.len() {
                let mut up = b.clone();
                up[t] += 1;
                candidates.insert(up);
            }
        }
        candidates
            .into_iter()
            .filter(|b| {
                !members.contains(b.as_slice()) && is_addable(b, &members, self.punctual)
            })
            .collect()
    }

    /// JSON array of integer tuples.
    pub fn to_json(&self) -> Value {
        json!(self.boxes)
    }
}

fn in_region(b: &[u32], punctual: bool) -> bool {
    !punctual || b[..b.len() - 1].iter().any(|&x| x > 0)
}

/// Minimal elements of the box poset: the origin, or the first r-1 unit
/// vectors in the punctual region.
fn minimal_boxes(dim: u32, punctual: bool) -> Vec<Vec<u32>> {
    let r = dim as usize;
    if punctual {
        (0..r - 1)
            .map(|t| {
                let mut e = vec![0u32; r];
                e[t] = 1;
                e
            })
            .collect()
    } else {
        vec![vec![0u32; r]]
    }
}

/// A box can join the diagram iff all its predecessors inside the region are
/// already present.
fn is_addable(b: &[u32], members: &HashSet<&[u32]>, punctual: bool) -> bool {
    let mut pred = b.to_vec();
    for t in 0..b.len() {
        if b[t] == 0 {
            continue;
        }
        pred[t] -= 1;
        let ok = !in_region(&pred, punctual) || members.contains(pred.as_slice());
        pred[t] += 1;
        if !ok {
            return false;
        }
    }
    true
}

struct Dfs<'a> {
    punctual: bool,
    n_max: usize,
    minimals: Vec<Vec<u32>>,
    diagram: Vec<Vec<u32>>,
    members: HashSet<Vec<u32>>,
    visit: &'a mut dyn FnMut(&[Vec<u32>]),
}

impl Dfs<'_> {
    fn run(&mut self, last: Option<&[u32]>) {
        (self.visit)(&self.diagram);
        if self.diagram.len() == self.n_max {
            return;
        }
        let mut candidates: BTreeSet<Vec<u32>> = BTreeSet::new();
        for m in &self.minimals {
            if !self.members.contains(m) {
                candidates.insert(m.clone());
            }
        }
        for d in &self.diagram {
            for t in 0..d.len() {
                let mut up = d.clone();
                up[t] += 1;
                if !self.members.contains(&up) {
                    candidates.insert(up);
                }
            }
        }
        let addable: Vec<Vec<u32>> = {
            let member_refs: HashSet<&[u32]> =
                self.members.iter().map(|b| b.as_slice()).collect();
            candidates
                .into_iter()
                .filter(|b| last.is_none_or(|l| b.as_slice() > l))
                .filter(|b| is_addable(b, &member_refs, self.punctual))
                .collect()
        };
        for b in addable {
            self.members.insert(b.clone());
            self.diagram.push(b.clone());
            self.run(Some(&b));
            self.diagram.pop();
            self.members.remove(&b);
        }
    }
}

fn check_args(r: u32, punctual: bool) -> Result<()> {
    if r < 1 || (punctual && r < 2) {
        return Err(Error::InvalidArgument(format!(
            "r must be >= 1 (>= 2 when punctual), got {r}"
        )));
    }
    Ok(())
}

/// Walks every diagram of size <= n_max exactly once, in lex order of the
/// sorted box sequence, invoking the visitor at each node (including the
/// empty diagram).
fn walk_diagrams(
    r: u32,
    n_max: usize,
    punctual: bool,
    visit: &mut dyn FnMut(&[Vec<u32>]),
) -> Result<()> {
    check_args(r, punctual)?;
    let mut dfs = Dfs {
        punctual,
        n_max,
        minimals: minimal_boxes(r, punctual),
        diagram: Vec::new(),
        members: HashSet::new(),
        visit,
    };
    dfs.run(None);
    Ok(())
}

/// All colength-n staircases, in the deterministic DFS (lex box-sequence)
/// order.
pub fn enumerate_ideals(r: u32, n: usize, punctual: bool) -> Result<Vec<StaircaseIdeal>> {
    let mut out = Vec::new();
    walk_diagrams(r, n, punctual, &mut |diagram| {
        if diagram.len() == n {
            let mut boxes = diagram.to_vec();
            boxes.sort();
            out.push(StaircaseIdeal::from_sorted_unchecked(r, punctual, boxes));
        }
    })?;
    Ok(out)
}

/// Diagram counts for every colength 0..=n_max from a single DFS walk.
/// Roots of the walk (first-box choices) are processed in parallel; the
/// result is a plain elementwise sum, so it is scheduling-independent.
pub fn oracle_count_table(r: u32, n_max: usize, punctual: bool) -> Result<Vec<BigUint>> {
    check_args(r, punctual)?;
    let mut counts = vec![BigUint::zero(); n_max + 1];
    counts[0] = BigUint::one(); // the empty diagram
    if n_max == 0 {
        return Ok(counts);
    }
    let roots = minimal_boxes(r, punctual);
    let per_root: Vec<Vec<BigUint>> = roots
        .par_iter()
        .map(|root| {
            let mut local = vec![BigUint::zero(); n_max + 1];
            let mut visit = |diagram: &[Vec<u32>]| {
                local[diagram.len()] += 1u32;
            };
            let mut dfs = Dfs {
                punctual,
                n_max,
                minimals: minimal_boxes(r, punctual),
                diagram: vec![root.clone()],
                members: HashSet::from([root.clone()]),
                visit: &mut visit,
            };
            dfs.run(Some(root));
            drop(dfs);
            local
        })
        .collect();
    for local in per_root {
        for (n, v) in local.into_iter().enumerate() {
            counts[n] += v;
        }
    }
    Ok(counts)
}

/// Number of colength-n staircases: chi of the fixed locus, i.e. P_r(n) for
/// the plain region and the punctual partition count otherwise.
pub fn oracle_count(r: u32, n: usize, punctual: bool) -> Result<BigUint> {
    Ok(oracle_count_table(r, n, punctual)?.pop().unwrap())
}

/// Column heights of the staircase: entry (i_1,...,i_{r-1}) is the least i_r
/// with z^i z_r^{i_r} in the ideal, i.e. the height of the column of boxes
/// over that index.
pub fn ideal_to_partition(ideal: &StaircaseIdeal) -> MultiPartition {
    let r = ideal.dim as usize;
    let mut entries = std::collections::BTreeMap::new();
    for b in &ideal.boxes {
        let idx = MultiIndex::new(b[..r - 1].to_vec());
        *entries.entry(idx).or_insert(0u64) += 1;
    }
    let p = MultiPartition::from_entries_unchecked(ideal.dim, ideal.punctual, entries);
    debug_assert!(p.is_valid());
    p
}

/// Inverse of [`ideal_to_partition`]: stacks a column of boxes of the
/// partition's height over each index.
pub fn partition_to_ideal(p: &MultiPartition) -> StaircaseIdeal {
    let mut boxes = Vec::with_capacity(p.weight() as usize);
    for (idx, &v) in p.entries() {
        for h in 0..v {
            let mut b = idx.coords().to_vec();
            b.push(h as u32);
            boxes.push(b);
        }
    }
    boxes.sort();
    let ideal = StaircaseIdeal::from_sorted_unchecked(p.dim(), p.is_punctual(), boxes);
    debug_assert!(ideal.is_downward_closed());
    ideal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_variable_has_unique_ideal() {
        for n in 0..6 {
            let ideals = enumerate_ideals(1, n, false).unwrap();
            assert_eq!(ideals.len(), 1);
            let expected: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();
            assert_eq!(ideals[0].boxes(), &expected[..]);
        }
    }

    #[test]
    fn two_variable_counts_match_partitions() {
        assert_eq!(oracle_count(2, 3, false).unwrap(), BigUint::from(3u32));
        let table = oracle_count_table(2, 8, false).unwrap();
        let expected = [1u32, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(table[n], BigUint::from(*e), "P_2({n})");
        }
    }

    #[test]
    fn punctual_r3_n2_has_five_diagrams() {
        assert_eq!(enumerate_ideals(3, 2, true).unwrap().len(), 5);
    }

    #[test]
    fn punctual_r4_n2_has_nine_diagrams() {
        assert_eq!(oracle_count(4, 2, true).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn r3_n4_count() {
        assert_eq!(oracle_count(3, 4, false).unwrap(), BigUint::from(13u32));
        assert_eq!(oracle_count(3, 0, false).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn invalid_arguments() {
        assert!(oracle_count(0, 1, false).is_err());
        assert!(oracle_count(1, 1, true).is_err());
        assert!(enumerate_ideals(1, 2, true).is_err());
    }

    #[test]
    fn diagrams_are_downward_closed_and_in_region() {
        for punctual in [false, true] {
            for n in 0..=5 {
                for ideal in enumerate_ideals(3, n, punctual).unwrap() {
                    assert!(ideal.is_downward_closed());
                    if punctual {
                        assert!(ideal
                            .boxes()
                            .iter()
                            .all(|b| b[..2].iter().any(|&x| x > 0)));
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_partition_bijection_small() {
        // r=2 diagram {(0,0)} -> partition {(0): 1}
        let i = StaircaseIdeal::new(2, false, vec![vec![0, 0]]).unwrap();
        let p = ideal_to_partition(&i);
        assert_eq!(p.weight(), 1);
        assert_eq!(p.entry(&MultiIndex::new(vec![0])), 1);
        // r=2 diagram {(0,0),(1,0)} -> partition {(0):1,(1):1}
        let i = StaircaseIdeal::new(2, false, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let p = ideal_to_partition(&i);
        assert_eq!(p.entry(&MultiIndex::new(vec![0])), 1);
        assert_eq!(p.entry(&MultiIndex::new(vec![1])), 1);
        // empty diagram -> empty partition
        let i = StaircaseIdeal::new(3, false, vec![]).unwrap();
        assert_eq!(ideal_to_partition(&i).weight(), 0);
    }

    #[test]
    fn partition_to_ideal_column() {
        use std::collections::BTreeMap;
        let mut entries = BTreeMap::new();
        entries.insert(MultiIndex::new(vec![0]), 2);
        let p = MultiPartition::from_entries_unchecked(2, false, entries);
        let i = partition_to_ideal(&p);
        assert_eq!(i.boxes(), &[vec![0, 0], vec![0, 1]]);
        // empty partition -> empty diagram
        let p = MultiPartition::empty(3, false);
        assert_eq!(partition_to_ideal(&p).colength(), 0);
    }

    #[test]
    fn roundtrip_is_identity_r3_n4() {
        let ideals = enumerate_ideals(3, 4, false).unwrap();
        assert_eq!(ideals.len(), 13);
        for ideal in ideals {
            let p = ideal_to_partition(&ideal);
            assert!(p.is_valid());
            assert_eq!(partition_to_ideal(&p), ideal);
        }
    }

    #[test]
    fn generators_of_small_ideals() {
        // empty diagram in 2 vars: the unit ideal, generated by 1
        let i = StaircaseIdeal::new(2, false, vec![]).unwrap();
        assert_eq!(i.minimal_generators(), vec![vec![0, 0]]);
        // diagram {(0,0)}: the maximal ideal (z1, z2)
        let i = StaircaseIdeal::new(2, false, vec![vec![0, 0]]).unwrap();
        assert_eq!(i.minimal_generators(), vec![vec![0, 1], vec![1, 0]]);
        // punctual empty diagram in 3 vars: (z1, z2) itself
        let i = StaircaseIdeal::new(3, true, vec![]).unwrap();
        assert_eq!(
            i.minimal_generators(),
            vec![vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn generator_count_is_positive_and_boxes_outside() {
        for ideal in enumerate_ideals(3, 3, true).unwrap() {
            let gens = ideal.minimal_generators();
            assert!(!gens.is_empty());
            for g in &gens {
                assert!(!ideal.boxes().contains(g));
            }
        }
    }
}
