//! r-dimensional and punctual r-dimensional partitions.
//!
//! An r-dimensional partition of n is a finitely supported array of positive
//! integers indexed by (r-1)-tuples of nonnegative integers, weakly
//! decreasing in every coordinate direction, with total sum n. The punctual
//! variant indexes by the same tuples minus the origin, and the monotonicity
//! condition is only imposed among the remaining indices.
//!
//! Counting uses a layer decomposition along the first index axis: an r-dim
//! partition is a pointwise weakly decreasing chain of (r-1)-dim partitions,
//! counted by a DP memoized on (outer-layer shape, remaining weight). The
//! staircase module provides the independent brute-force cross-check.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::coeff_uint;
use crate::series::TruncatedSeries;

/// Index of an entry: an (r-1)-tuple of nonnegative integers. `Ord` is
/// lexicographic (storage order only); monotonicity checks use the
/// componentwise order via [`dominated_by`](Self::dominated_by).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// True for the all-zero tuple; in particular for the empty tuple.
    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise <=.
    pub fn dominated_by(&self, other: &Self) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// A (possibly punctual) r-dimensional partition stored as its finitely
/// supported entry map. The derived `Ord` sorts by the entry list
/// lexicographically, which is the documented enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiPartition {
    dim: u32,
    punctual: bool,
    entries: BTreeMap<MultiIndex, u64>,
}

impl MultiPartition {
    /// Validating constructor; rejects entry maps that break the support or
    /// monotonicity rules.
    pub fn new(dim: u32, punctual: bool, entries: BTreeMap<MultiIndex, u64>) -> Result<Self> {
        let p = Self::from_entries_unchecked(dim, punctual, entries);
        if !p.is_valid() {
            return Err(Error::InvalidArgument(
                "entry map is not a valid partition".into(),
            ));
        }
        Ok(p)
    }

    /// No validation; pair with [`is_valid`](Self::is_valid).
    pub fn from_entries_unchecked(
        dim: u32,
        punctual: bool,
        entries: BTreeMap<MultiIndex, u64>,
    ) -> Self {
        Self {
            dim,
            punctual,
            entries,
        }
    }

    pub fn empty(dim: u32, punctual: bool) -> Self {
        Self::from_entries_unchecked(dim, punctual, BTreeMap::new())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_punctual(&self) -> bool {
        self.punctual
    }

    pub fn entries(&self) -> &BTreeMap<MultiIndex, u64> {
        &self.entries
    }

    /// Entry at an index, zero off the support.
    pub fn entry(&self, idx: &MultiIndex) -> u64 {
        self.entries.get(idx).copied().unwrap_or(0)
    }

    /// Sum of all entries.
    pub fn weight(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Checks arities, positivity, the punctual region, and monotonicity.
    /// Monotonicity only needs the cover relations: every index obtained by
    /// decrementing one coordinate (and still inside the index set) must
    /// carry an entry at least as large.
    pub fn is_valid(&self) -> bool {
        if self.dim < 1 {
            return false;
        }
        let arity = (self.dim - 1) as usize;
        for (idx, &v) in &self.entries {
            if idx.arity() != arity || v == 0 {
                return false;
            }
            if self.punctual && idx.is_origin() {
                return false;
            }
            for t in 0..arity {
                if idx.coords()[t] == 0 {
                    continue;
                }
                let mut coords = idx.coords().to_vec();
                coords[t] -= 1;
                let pred = MultiIndex::new(coords);
                if self.punctual && pred.is_origin() {
                    continue;
                }
                if self.entry(&pred) < v {
                    return false;
                }
            }
        }
        true
    }

    /// Pointwise <= against another partition of the same arity.
    fn pointwise_le(&self, bound: &Self) -> bool {
        self.entries.iter().all(|(idx, &v)| bound.entry(idx) >= v)
    }

    /// Pointwise <= away from the origin index; the entry at the origin is
    /// unconstrained. This is the relation between the first full layer of a
    /// punctual partition and its punctual layer zero.
    fn le_outside_origin(&self, bound: &Self) -> bool {
        self.entries
            .iter()
            .all(|(idx, &v)| idx.is_origin() || bound.entry(idx) >= v)
    }

    /// Canonical (index, entry) list, sorted by index; used as memo key and
    /// as the enumeration sort key.
    pub fn to_pairs(&self) -> Vec<(Vec<u32>, u64)> {
        self.entries
            .iter()
            .map(|(idx, &v)| (idx.coords().to_vec(), v))
            .collect()
    }
}

/// True iff the entry array satisfies the weight, support and monotonicity
/// rules of an (optionally punctual) r-dimensional partition.
pub fn is_valid_partition(p: &MultiPartition) -> bool {
    p.is_valid()
}

fn check_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("r must be >= 2, got {r}")));
    }
    Ok(())
}

/// Cached recursive enumeration of d-dimensional partitions by weight.
struct EnumCtx {
    plain: HashMap<(u32, u64), Rc<Vec<MultiPartition>>>,
    punctual: HashMap<(u32, u64), Rc<Vec<MultiPartition>>>,
}

impl EnumCtx {
    fn new() -> Self {
        Self {
            plain: HashMap::new(),
            punctual: HashMap::new(),
        }
    }

    fn plain_of_weight(&mut self, dim: u32, w: u64) -> Rc<Vec<MultiPartition>> {
        if let Some(v) = self.plain.get(&(dim, w)) {
            return v.clone();
        }
        let built = Rc::new(self.build_plain(dim, w));
        self.plain.insert((dim, w), built.clone());
        built
    }

    fn punctual_of_weight(&mut self, dim: u32, w: u64) -> Rc<Vec<MultiPartition>> {
        if let Some(v) = self.punctual.get(&(dim, w)) {
            return v.clone();
        }
        let built = Rc::new(self.build_punctual(dim, w));
        self.punctual.insert((dim, w), built.clone());
        built
    }

    fn build_plain(&mut self, dim: u32, w: u64) -> Vec<MultiPartition> {
        if w == 0 {
            return vec![MultiPartition::empty(dim, false)];
        }
        if dim == 1 {
            // a 1-dimensional partition of w is the single entry w at the
            // empty index
            let mut entries = BTreeMap::new();
            entries.insert(MultiIndex::new(vec![]), w);
            return vec![MultiPartition::from_entries_unchecked(1, false, entries)];
        }
        let mut out = Vec::new();
        for w0 in 1..=w {
            let heads = self.plain_of_weight(dim - 1, w0);
            for head in heads.iter() {
                for chain in self.chains_le(head, w - w0) {
                    let mut layers: Vec<&MultiPartition> = vec![head];
                    layers.extend(chain.iter());
                    out.push(assemble(dim, false, &layers));
                }
            }
        }
        out.sort();
        out
    }

    fn build_punctual(&mut self, dim: u32, w: u64) -> Vec<MultiPartition> {
        if dim == 1 {
            // the punctual index set in dimension 1 is empty
            return if w == 0 {
                vec![MultiPartition::empty(1, true)]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        for w0 in 0..=w {
            let budget = w - w0;
            let heads = self.punctual_of_weight(dim - 1, w0);
            for head in heads.iter() {
                if budget == 0 {
                    out.push(assemble(dim, true, &[head]));
                    continue;
                }
                // the first full layer is bounded by the punctual head away
                // from the origin; its origin entry is unconstrained
                for v in 1..=budget {
                    let firsts = self.plain_of_weight(dim - 1, v);
                    for first in firsts.iter().filter(|f| f.le_outside_origin(head)) {
                        for chain in self.chains_le(first, budget - v) {
                            let mut layers: Vec<&MultiPartition> = vec![head, first];
                            layers.extend(chain.iter());
                            out.push(assemble(dim, true, &layers));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Nonempty pointwise weakly decreasing chains below `bound` with total
    /// weight m (the empty chain for m = 0).
    fn chains_le(&mut self, bound: &MultiPartition, m: u64) -> Vec<Vec<MultiPartition>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for v in 1..=m {
            let candidates: Vec<MultiPartition> = self
                .plain_of_weight(bound.dim, v)
                .iter()
                .filter(|mu| mu.pointwise_le(bound))
                .cloned()
                .collect();
            for mu in candidates {
                for tail in self.chains_le(&mu, m - v) {
                    let mut chain = Vec::with_capacity(tail.len() + 1);
                    chain.push(mu.clone());
                    chain.extend(tail);
                    out.push(chain);
                }
            }
        }
        out
    }
}

/// Stacks (d-1)-dimensional layers into a d-dimensional partition, layer t
/// becoming the slice at first coordinate t.
fn assemble(dim: u32, punctual: bool, layers: &[&MultiPartition]) -> MultiPartition {
    let mut entries = BTreeMap::new();
    for (t, layer) in layers.iter().enumerate() {
        for (idx, &v) in layer.entries() {
            let mut coords = Vec::with_capacity(idx.arity() + 1);
            coords.push(t as u32);
            coords.extend_from_slice(idx.coords());
            entries.insert(MultiIndex::new(coords), v);
        }
    }
    let p = MultiPartition::from_entries_unchecked(dim, punctual, entries);
    debug_assert!(p.is_valid(), "assembled an invalid partition: {p:?}");
    p
}

/// All (punctual) r-dimensional partitions of n, sorted by their (index,
/// entry) lists lexicographically.
pub fn enumerate_partitions(r: u32, n: u64, punctual: bool) -> Result<Vec<MultiPartition>> {
    check_r(r)?;
    let mut ctx = EnumCtx::new();
    let list = if punctual {
        ctx.punctual_of_weight(r, n)
    } else {
        ctx.plain_of_weight(r, n)
    };
    Ok((*list).clone())
}

type Pairs = Vec<(Vec<u32>, u64)>;

/// Pointwise <= of two partitions given as index-sorted pair lists, by a
/// two-pointer merge.
fn pairs_le(a: &Pairs, b: &Pairs) -> bool {
    let mut j = 0;
    for (idx, v) in a {
        while j < b.len() && b[j].0 < *idx {
            j += 1;
        }
        if j >= b.len() || b[j].0 != *idx || b[j].1 < *v {
            return false;
        }
    }
    true
}

/// Same, ignoring the entry at the origin index.
fn pairs_le_outside_origin(a: &Pairs, b: &Pairs) -> bool {
    let mut j = 0;
    for (idx, v) in a {
        if idx.iter().all(|&c| c == 0) {
            continue;
        }
        while j < b.len() && b[j].0 < *idx {
            j += 1;
        }
        if j >= b.len() || b[j].0 != *idx || b[j].1 < *v {
            return false;
        }
    }
    true
}

/// Layered counting DP for a fixed r. Layer shapes get dense integer ids so
/// the memo keys are (outer-layer id, remaining weight); the memo behaves as
/// a single logical map under concurrent insertion: the counting functions
/// are pure, so racing writers always insert the same value.
pub struct PartitionCounter {
    max_weight: u64,
    layer_ids: Vec<Vec<usize>>, // [weight] -> ids of plain (r-1)-dim layers
    layer_pairs: Vec<Pairs>,    // id -> sorted (index, entry) list
    punct_layers: Vec<Vec<Pairs>>, // [weight] -> punctual layer-zero shapes
    memo: DashMap<(usize, u64), BigUint>,
}

impl PartitionCounter {
    /// Builds the (r-1)-dimensional layer tables needed to count weights up
    /// to `max_weight`.
    pub fn new(r: u32, max_weight: u64) -> Result<Self> {
        check_r(r)?;
        let mut ctx = EnumCtx::new();
        let mut layer_ids = Vec::with_capacity(max_weight as usize + 1);
        let mut layer_pairs = Vec::new();
        for w in 0..=max_weight {
            let list = ctx.plain_of_weight(r - 1, w);
            let ids = (0..list.len()).map(|i| layer_pairs.len() + i).collect();
            layer_pairs.extend(list.iter().map(MultiPartition::to_pairs));
            layer_ids.push(ids);
        }
        let punct_layers = (0..=max_weight)
            .map(|w| {
                ctx.punctual_of_weight(r - 1, w)
                    .iter()
                    .map(MultiPartition::to_pairs)
                    .collect()
            })
            .collect();
        Ok(Self {
            max_weight,
            layer_ids,
            layer_pairs,
            punct_layers,
            memo: DashMap::new(),
        })
    }

    /// Number of chains top >= l_1 >= l_2 >= ... of nonempty layers with
    /// total weight m.
    fn chains_below(&self, top: usize, m: u64) -> BigUint {
        if m == 0 {
            return BigUint::one();
        }
        if let Some(hit) = self.memo.get(&(top, m)) {
            return hit.clone();
        }
        let top_pairs = &self.layer_pairs[top];
        let mut total = BigUint::zero();
        for v in 1..=m {
            for &mu in &self.layer_ids[v as usize] {
                if pairs_le(&self.layer_pairs[mu], top_pairs) {
                    total += self.chains_below(mu, m - v);
                }
            }
        }
        self.memo.insert((top, m), total.clone());
        total
    }

    /// Chains of full layers below a punctual layer-zero shape: the first
    /// layer is bounded away from the origin only.
    fn punctual_tail(&self, head: &Pairs, m: u64) -> BigUint {
        if m == 0 {
            return BigUint::one();
        }
        let mut total = BigUint::zero();
        for v in 1..=m {
            for &first in &self.layer_ids[v as usize] {
                if pairs_le_outside_origin(&self.layer_pairs[first], head) {
                    total += self.chains_below(first, m - v);
                }
            }
        }
        total
    }

    /// P_r(n). Splits over the outer layer across workers; the result is a
    /// commutative sum, so it does not depend on scheduling.
    pub fn count(&self, n: u64) -> BigUint {
        assert!(n <= self.max_weight, "counter built for weights <= {}", self.max_weight);
        if n == 0 {
            return BigUint::one();
        }
        (1..=n)
            .into_par_iter()
            .map(|w| {
                self.layer_ids[w as usize]
                    .par_iter()
                    .map(|&head| self.chains_below(head, n - w))
                    .sum::<BigUint>()
            })
            .sum()
    }

    /// The punctual count.
    pub fn count_punctual(&self, n: u64) -> BigUint {
        assert!(n <= self.max_weight, "counter built for weights <= {}", self.max_weight);
        (0..=n)
            .into_par_iter()
            .map(|w| {
                self.punct_layers[w as usize]
                    .par_iter()
                    .map(|head| self.punctual_tail(head, n - w))
                    .sum::<BigUint>()
            })
            .sum()
    }
}

/// P_r(n) by the layered DP.
pub fn count_partitions(r: u32, n: u64) -> Result<BigUint> {
    Ok(PartitionCounter::new(r, n)?.count(n))
}

/// The punctual partition count by the layered DP.
pub fn count_punctual(r: u32, n: u64) -> Result<BigUint> {
    Ok(PartitionCounter::new(r, n)?.count_punctual(n))
}

/// Generating series of the (punctual) partition counts through `order`.
pub fn partition_series(r: u32, order: usize, punctual: bool) -> Result<TruncatedSeries> {
    let counter = PartitionCounter::new(r, order as u64)?;
    let counts: Vec<BigUint> = (0..=order as u64)
        .into_par_iter()
        .map(|n| {
            if punctual {
                counter.count_punctual(n)
            } else {
                counter.count(n)
            }
        })
        .collect();
    Ok(TruncatedSeries::from_coeffs(
        counts.iter().map(coeff_uint).collect(),
    ))
}
