//! Boxed plane partitions: q-Pochhammer symbols, the closed product formula
//! for the generating function pi_{k,l}(n; q) of plane partitions with at
//! most k rows, at most l columns and entries <= n, its brute-force twin,
//! the fixed-profile recursion, the punctual relation, and the finite
//! stabilization check that replaces the analytic k, l, n -> infinity limit.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::partition_series;
use crate::rational::{coeff_uint, Coeff};
use crate::series::{one_minus_q_pow, TruncatedSeries};

/// Bounding box for a plane partition: at most `rows` rows, `cols` columns,
/// entries at most `entry_cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxSpec {
    pub rows: u32,
    pub cols: u32,
    pub entry_cap: u32,
}

impl BoxSpec {
    pub fn new(rows: u32, cols: u32, entry_cap: u32) -> Result<Self> {
        if rows < 1 || cols < 1 {
            return Err(Error::InvalidArgument(format!(
                "box needs at least one row and one column, got {rows}x{cols}"
            )));
        }
        Ok(Self {
            rows,
            cols,
            entry_cap,
        })
    }
}

/// A rows x cols array of entries, weakly decreasing along rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePartitionBoxed {
    pub entries: Vec<Vec<u32>>,
}

impl PlanePartitionBoxed {
    pub fn weight(&self) -> u64 {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&e| e as u64).sum::<u64>())
            .sum()
    }

    pub fn fits(&self, spec: &BoxSpec) -> bool {
        if self.entries.len() > spec.rows as usize {
            return false;
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() > spec.cols as usize {
                return false;
            }
            for (j, &e) in row.iter().enumerate() {
                if e > spec.entry_cap {
                    return false;
                }
                if j > 0 && row[j - 1] < e {
                    return false;
                }
                if i > 0 && self.entries[i - 1].get(j).copied().unwrap_or(0) < e {
                    return false;
                }
            }
        }
        true
    }
}

/// First-column profile (n_1,...,n_k), weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile(Vec<u32>);

impl Profile {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonMonotoneProfile(values));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&v| v as u64).sum()
    }
}

/// (q)_i = (1-q)(1-q^2)...(1-q^i); the empty product for i = 0.
pub fn pochhammer(i: u32, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Coeff::zero(); order + 1];
    coeffs[0] = Coeff::one();
    // multiply by (1 - q^j) in place: c'_m = c_m - c_{m-j}
    for j in 1..=i as usize {
        if j > order {
            break;
        }
        for m in (j..=order).rev() {
            let v = &coeffs[m] - &coeffs[m - j];
            coeffs[m] = v;
        }
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// Closed product formula for pi_{k,l}(n; q), as an exact series quotient of
/// Pochhammer products. The result is a polynomial with nonnegative integer
/// coefficients; that is asserted after the division.
pub fn pi_closed(k: u32, l: u32, n: u32, order: usize) -> TruncatedSeries {
    let spec = BoxSpec::new(k, l, n).expect("pi_closed needs k, l >= 1");
    let (k, l, n) = (spec.rows, spec.cols, spec.entry_cap);
    let mut num = TruncatedSeries::one(order);
    let mut den = TruncatedSeries::one(order);
    for i in 1..k {
        num = &num * &pochhammer(i, order);
    }
    for i in 0..k {
        num = &num * &pochhammer(n + l + i, order);
        den = &den * &pochhammer(l + i, order);
        den = &den * &pochhammer(n + i, order);
    }
    let out = &num * &den.inv().expect("Pochhammer products have constant term 1");
    debug_assert!(
        out.coeffs().iter().all(|c| c.is_integer() && !c.is_negative()),
        "boxed counts must be nonnegative integers"
    );
    out
}

fn counts_to_series(counts: Vec<BigUint>) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(counts.iter().map(coeff_uint).collect())
}

/// Direct enumeration of boxed plane partitions, pruned by total weight.
/// Coefficient of q^m is the number of partitions of m in the box, exact for
/// all m <= order.
pub fn pi_brute(k: u32, l: u32, n: u32, order: usize) -> TruncatedSeries {
    let mut counts = vec![BigUint::zero(); order + 1];
    let mut grid = vec![vec![0u32; l as usize]; k as usize];
    enumerate_boxed(&mut grid, k as usize, l as usize, n, 0, 0, order, false, &mut |w| {
        counts[w] += 1u32;
    });
    counts_to_series(counts)
}

/// Direct enumeration with the origin cell deleted (punctual boxed plane
/// partitions): entries at (0,0) are forbidden and the monotonicity
/// constraints through that cell are dropped.
pub fn tilde_pi_brute(k: u32, l: u32, n: u32, order: usize) -> TruncatedSeries {
    let mut counts = vec![BigUint::zero(); order + 1];
    let mut grid = vec![vec![0u32; l as usize]; k as usize];
    enumerate_boxed(&mut grid, k as usize, l as usize, n, 0, 0, order, true, &mut |w| {
        counts[w] += 1u32;
    });
    counts_to_series(counts)
}

/// Row-major cell recursion; each cell is capped by its upper and left
/// neighbours (skipping the deleted origin in the punctual case) and by the
/// entry cap, and the running weight is pruned at `order`.
#[allow(clippy::too_many_arguments)]
fn enumerate_boxed(
    grid: &mut Vec<Vec<u32>>,
    k: usize,
    l: usize,
    n: u32,
    cell: usize,
    weight: usize,
    order: usize,
    punctual: bool,
    emit: &mut impl FnMut(usize),
) {
    if cell == k * l {
        emit(weight);
        return;
    }
    let (i, j) = (cell / l, cell % l);
    if punctual && i == 0 && j == 0 {
        grid[0][0] = 0;
        enumerate_boxed(grid, k, l, n, cell + 1, weight, order, punctual, emit);
        return;
    }
    let mut cap = n;
    if i > 0 && !(punctual && i == 1 && j == 0) {
        cap = cap.min(grid[i - 1][j]);
    }
    if j > 0 && !(punctual && i == 0 && j == 1) {
        cap = cap.min(grid[i][j - 1]);
    }
    for v in 0..=cap {
        let w = weight + v as usize;
        if w > order {
            break;
        }
        grid[i][j] = v;
        enumerate_boxed(grid, k, l, n, cell + 1, w, order, punctual, emit);
    }
    grid[i][j] = 0;
}

/// Generating function of plane partitions with at most `l` columns, rows
/// profiled by the fixed first column: row i starts with profile[i]. Base
/// case l = 1 is the single fixed column q^(sum of the profile); columns are
/// added by the nested-sum recursion over weakly decreasing interlacing
/// profiles.
pub fn pi_profile(l: u32, profile: &[u32], order: usize) -> Result<TruncatedSeries> {
    let profile = Profile::new(profile.to_vec())?;
    if l < 1 {
        return Err(Error::InvalidArgument("l must be >= 1".into()));
    }
    Ok(pi_profile_rec(l, profile.values(), order))
}

fn pi_profile_rec(l: u32, profile: &[u32], order: usize) -> TruncatedSeries {
    let total: u64 = profile.iter().map(|&v| v as u64).sum();
    if l == 1 {
        return TruncatedSeries::monomial(Coeff::one(), total as usize, order);
    }
    // sum pi_{l-1}(m_1,...,m_k) over weakly decreasing m <= profile
    let mut sum = TruncatedSeries::zero(order);
    let mut m = vec![0u32; profile.len()];
    nested_profiles(profile, 0, u32::MAX, &mut m, &mut |m| {
        sum = &sum + &pi_profile_rec(l - 1, m, order);
    });
    &TruncatedSeries::monomial(Coeff::one(), total as usize, order) * &sum
}

/// Visits every weakly decreasing profile m with m_i <= bound_i.
fn nested_profiles(
    bound: &[u32],
    pos: usize,
    prev: u32,
    m: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    if pos == bound.len() {
        visit(m);
        return;
    }
    for v in 0..=bound[pos].min(prev) {
        m[pos] = v;
        nested_profiles(bound, pos + 1, v, m, visit);
    }
    m[pos] = 0;
}

/// Checks the constant-profile identity
/// pi_{l+1}(n,...,n; q) = q^(k n) * pi_{k,l}(n; q) through the order.
pub fn verify_constant_profile(k: u32, l: u32, n: u32, order: usize) -> bool {
    let profile = vec![n; k as usize];
    let lhs = pi_profile(l + 1, &profile, order).expect("constant profiles are monotone");
    let shift = TruncatedSeries::monomial(Coeff::one(), (k as usize) * (n as usize), order);
    let rhs = &shift * &pi_closed(k, l, n, order);
    lhs == rhs
}

/// Punctual boxed generating function from the closed forms:
/// q^(-n) [pi_{k,l}(n; q) - pi_{k,l}(n-1; q)]. The difference is divisible
/// by q^n; a failure of that divisibility is reported as an error (it would
/// mean a bug, not bad input). For n = 0 this is the constant series 1.
pub fn tilde_pi(k: u32, l: u32, n: u32, order: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Ok(TruncatedSeries::one(order));
    }
    let inner = order + n as usize;
    let diff = &pi_closed(k, l, n, inner) - &pi_closed(k, l, n - 1, inner);
    if diff.coeffs()[..n as usize].iter().any(|c| !c.is_zero()) {
        return Err(Error::DivisibilityFailure { n });
    }
    Ok(TruncatedSeries::from_coeffs(
        diff.coeffs()[n as usize..].to_vec(),
    ))
}

/// Realizes the l, n -> infinity limit of the boxed counts at a finite
/// order: coefficient m of pi_{k,l}(n; q) is independent of k, l, n once all
/// exceed m, so bounds of order+1 freeze every coefficient through `order`.
/// Checks that the punctual series times (1 - q) reproduces the plain
/// series, with the plain side from the layered enumeration and both sides
/// cross-checked against the stabilized closed forms.
pub fn stabilized_ratio_check(order: usize) -> Result<bool> {
    let plain = partition_series(3, order, false)?;
    let punctual = partition_series(3, order, true)?;
    let big = (order + 1) as u32;
    let plain_boxed = pi_closed(big, big, big, order);
    let punctual_boxed = tilde_pi(big, big, big, order)?;
    let relation = &punctual * &one_minus_q_pow(1, order) == plain;
    Ok(relation && plain_boxed == plain && punctual_boxed == punctual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries as TS;

    #[test]
    fn pochhammer_small() {
        assert_eq!(pochhammer(0, 4), TS::one(4));
        assert_eq!(pochhammer(1, 4), TS::from_integers(&[1, -1, 0, 0, 0]));
        assert_eq!(pochhammer(2, 4), TS::from_integers(&[1, -1, -1, 1, 0]));
    }

    #[test]
    fn pi_closed_trivial_cap() {
        for (k, l) in [(1, 1), (2, 3), (3, 2)] {
            assert_eq!(pi_closed(k, l, 0, 8), TS::one(8));
        }
    }

    #[test]
    fn pi_closed_single_cell() {
        for n in 0..=4u32 {
            let mut expected = vec![0i64; 10];
            for m in 0..=n as usize {
                expected[m] = 1;
            }
            assert_eq!(pi_closed(1, 1, n, 9), TS::from_integers(&expected));
        }
    }

    #[test]
    fn pi_closed_two_by_two_cap_one() {
        assert_eq!(
            pi_closed(2, 2, 1, 4),
            TS::from_integers(&[1, 1, 2, 1, 1])
        );
    }

    #[test]
    fn pi_brute_examples() {
        assert_eq!(pi_brute(1, 1, 1, 2), TS::from_integers(&[1, 1, 0]));
        assert_eq!(pi_brute(2, 2, 1, 4), TS::from_integers(&[1, 1, 2, 1, 1]));
        assert_eq!(pi_brute(3, 2, 0, 3), TS::one(3));
    }

    #[test]
    fn closed_equals_brute() {
        for k in 1..=3 {
            for l in 1..=3 {
                for n in 0..=3 {
                    let full = (k * l * n) as usize;
                    assert_eq!(
                        pi_closed(k, l, n, full.max(1)),
                        pi_brute(k, l, n, full.max(1)),
                        "k={k} l={l} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn transpose_symmetry() {
        for k in 1..=3 {
            for l in 1..=3 {
                for n in 0..=3 {
                    let ord = (k * l * n) as usize + 1;
                    assert_eq!(pi_brute(k, l, n, ord), pi_brute(l, k, n, ord));
                }
            }
        }
    }

    #[test]
    fn profile_base_cases() {
        assert_eq!(
            pi_profile(1, &[3, 1], 6).unwrap(),
            TS::monomial(Coeff::one(), 4, 6)
        );
        assert_eq!(pi_profile(2, &[0, 0], 5).unwrap(), TS::one(5));
        assert!(matches!(
            pi_profile(2, &[1, 2], 5),
            Err(Error::NonMonotoneProfile(_))
        ));
    }

    #[test]
    fn profile_single_row() {
        // rows (1) and (1,1): q + q^2
        assert_eq!(
            pi_profile(2, &[1], 5).unwrap(),
            TS::from_integers(&[0, 1, 1, 0, 0, 0])
        );
    }

    #[test]
    fn constant_profile_identity() {
        for k in 1..=2 {
            for l in 1..=2 {
                for n in 0..=2 {
                    assert!(verify_constant_profile(k, l, n, 16), "k={k} l={l} n={n}");
                }
            }
        }
    }

    #[test]
    fn tilde_pi_base_and_single_cell() {
        assert_eq!(tilde_pi(2, 3, 0, 5).unwrap(), TS::one(5));
        for n in 1..=3 {
            assert_eq!(tilde_pi(1, 1, n, 4).unwrap(), TS::one(4));
        }
    }

    #[test]
    fn tilde_pi_matches_brute() {
        for k in 1..=3 {
            for l in 1..=3 {
                for n in 0..=3 {
                    let ord = (k * l * n) as usize + 2;
                    assert_eq!(
                        tilde_pi(k, l, n, ord).unwrap(),
                        tilde_pi_brute(k, l, n, ord),
                        "k={k} l={l} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn tilde_pi_brute_two_by_two() {
        let s = tilde_pi_brute(2, 2, 1, 3);
        assert_eq!(s, TS::from_integers(&[1, 2, 1, 1]));
    }

    #[test]
    fn profile_recursion_chain_identity() {
        // pi_{l+1}(n,...,n) = q^{kn} * sum_{m<=n} q^m * tilde_pi(k, l, m)
        let order = 14;
        for k in 1..=3u32 {
            for l in 1..=3u32 {
                for n in 0..=2u32 {
                    let lhs = pi_profile(l + 1, &vec![n; k as usize], order).unwrap();
                    let mut sum = TS::zero(order);
                    for m in 0..=n {
                        let shifted = &TS::monomial(Coeff::one(), m as usize, order)
                            * &tilde_pi(k, l, m, order).unwrap();
                        sum = &sum + &shifted;
                    }
                    let rhs = &TS::monomial(Coeff::one(), (k * n) as usize, order) * &sum;
                    assert_eq!(lhs, rhs, "k={k} l={l} n={n}");
                }
            }
        }
    }

    #[test]
    fn stabilization_of_coefficients() {
        // coefficient m of pi_{k,l}(n) equals the unbounded plane-partition
        // count P_3(m) once k, l, n all exceed m
        let p3 = [1i64, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500];
        let m = 10;
        let s = pi_brute(11, 11, 11, m);
        assert_eq!(s, TS::from_integers(&p3));
        assert_eq!(pi_closed(11, 11, 11, m), s);
    }

    #[test]
    fn stabilized_ratio_small_orders() {
        assert!(stabilized_ratio_check(0).unwrap());
        assert!(stabilized_ratio_check(5).unwrap());
    }

    #[test]
    fn boxed_types_validate() {
        assert!(BoxSpec::new(0, 1, 1).is_err());
        let spec = BoxSpec::new(2, 2, 1).unwrap();
        let good = PlanePartitionBoxed {
            entries: vec![vec![1, 1], vec![1, 0]],
        };
        assert!(good.fits(&spec));
        assert_eq!(good.weight(), 3);
        let bad = PlanePartitionBoxed {
            entries: vec![vec![0, 1]],
        };
        assert!(!bad.fits(&spec));
        let too_tall = PlanePartitionBoxed {
            entries: vec![vec![2]],
        };
        assert!(!too_tall.fits(&spec));
    }
}
