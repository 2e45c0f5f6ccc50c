//! Exact counting of directed k-edge paths and walks.
//!
//! A k-edge path is a sequence of k+1 *distinct* vertices with a forward
//! edge between consecutive entries; a walk drops the distinctness
//! requirement. In a tournament every path subgraph admits exactly one
//! consistent direction, so sequence counts coincide with subgraph counts.
//!
//! Two independent path engines are provided: a backtracking DFS over
//! extendable prefixes and a dynamic program over (vertex subset, endpoint)
//! states. They share no code and are cross-checked in the tests. Counts
//! are exposed as arbitrary-precision integers; internal accumulators use
//! `u128`, which cannot overflow within the engines' stated vertex limits.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::tournament::Tournament;

/// Vertex ceiling for the subset dynamic program (table over all vertex
/// subsets times endpoint).
pub const SUBSET_DP_MAX: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("subset DP infeasible for n={n}: limit is {max} vertices")]
    TooManyVertices { n: usize, max: usize },
}

/// The bound pair of the path-count theorem: `upper = n(n/2)^k = n^{k+1}/2^k`
/// as an exact rational and `lower = binom(n, k+1)` as an exact integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundPair {
    pub upper: BigRational,
    pub lower: BigUint,
}

/// Certificate that a path count sits between the two bounds. All
/// comparisons are exact: the rational upper bound is compared
/// cross-multiplied (`count * 2^k <= n^{k+1}`), never through floats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathBoundCertificate {
    pub n: usize,
    pub k: usize,
    pub count: BigUint,
    pub bounds: BoundPair,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl PathBoundCertificate {
    pub fn new(n: usize, k: usize, count: BigUint) -> Self {
        let bounds = bounds(n, k);
        let lower_ok = bounds.lower <= count;
        let upper_ok = (count.clone() << k) <= BigUint::from(n).pow(k as u32 + 1);
        PathBoundCertificate { n, k, count, bounds, lower_ok, upper_ok }
    }

    pub fn pass(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// `upper = n^{k+1}/2^k`, `lower = binom(n, k+1)` (zero when `k+1 > n`).
pub fn bounds(n: usize, k: usize) -> BoundPair {
    let upper = BigRational::new(
        BigInt::from(n).pow(k as u32 + 1),
        BigInt::one() << k,
    );
    BoundPair { upper, lower: binomial(n as u64, k as u64 + 1) }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Counts directed k-edge paths by backtracking over extendable prefixes,
/// visiting vertices in increasing label order. `k = 0` returns `n`;
/// `k >= n` returns 0.
pub fn count_paths_dfs(t: &Tournament, k: usize) -> BigUint {
    let n = t.n();
    if k >= n {
        return BigUint::zero();
    }
    if k == 0 {
        return BigUint::from(n);
    }
    let total: u128 = match t.bit_rows() {
        Some(rows) => (0..n).map(|v| dfs_bits(rows, v, 1u64 << v, k)).sum(),
        None => {
            let mut visited = vec![false; n];
            (0..n)
                .map(|v| {
                    visited[v] = true;
                    let c = dfs_wide(t, v, &mut visited, k);
                    visited[v] = false;
                    c
                })
                .sum()
        }
    };
    u128_to_biguint(total)
}

fn dfs_bits(rows: &[u64], v: usize, visited: u64, edges_left: usize) -> u128 {
    let mut candidates = rows[v] & !visited;
    if edges_left == 1 {
        return candidates.count_ones() as u128;
    }
    let mut total = 0u128;
    while candidates != 0 {
        let u = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        total += dfs_bits(rows, u, visited | (1u64 << u), edges_left - 1);
    }
    total
}

fn dfs_wide(t: &Tournament, v: usize, visited: &mut [bool], edges_left: usize) -> u128 {
    let mut total = 0u128;
    for u in t.out_neighbors(v) {
        if visited[u] {
            continue;
        }
        if edges_left == 1 {
            total += 1;
        } else {
            visited[u] = true;
            total += dfs_wide(t, u, visited, edges_left - 1);
            visited[u] = false;
        }
    }
    total
}

/// Counts directed k-edge paths with the subset dynamic program. Equals
/// [`count_paths_dfs`] on every input; requires `n <= 24`.
pub fn count_paths_subset_dp(t: &Tournament, k: usize) -> Result<BigUint, PathError> {
    let n = t.n();
    if n > SUBSET_DP_MAX {
        return Err(PathError::TooManyVertices { n, max: SUBSET_DP_MAX });
    }
    if k >= n {
        return Ok(BigUint::zero());
    }
    Ok(paths_by_popcount(t, k).pop().unwrap())
}

/// One subset-DP run yields the counts for every `k <= n-1` simultaneously;
/// entry `k` of the result is the k-edge path count.
pub fn count_all_paths(t: &Tournament) -> Result<Vec<BigUint>, PathError> {
    let n = t.n();
    if n > SUBSET_DP_MAX {
        return Err(PathError::TooManyVertices { n, max: SUBSET_DP_MAX });
    }
    Ok(paths_by_popcount(t, n - 1))
}

/// Number of directed Hamilton paths (`k = n-1`). Every tournament has at
/// least one; the engine asserts this post-condition.
pub fn hamilton_path_count(t: &Tournament) -> Result<BigUint, PathError> {
    let count = count_paths_subset_dp(t, t.n() - 1)?;
    assert!(!count.is_zero(), "tournament without a Hamilton path");
    Ok(count)
}

/// DP state = (vertex subset S, endpoint v): number of directed paths
/// covering exactly S and ending at v. Layers are processed in increasing
/// popcount; within a layer, subsets are enumerated in increasing numeric
/// order and indexed by colexicographic rank, so only two layers are live
/// at a time. Returns totals for k = 0..=max_k.
fn paths_by_popcount(t: &Tournament, max_k: usize) -> Vec<BigUint> {
    let n = t.n();
    let rows = t.bit_rows().expect("subset DP requires bitmask rows");
    let kmax = max_k.min(n - 1);
    let choose = binom_table(n);
    let mut totals = vec![BigUint::zero(); kmax + 1];
    totals[0] = BigUint::from(n);

    // Layer p = 1: subset {v} has colex rank v, single endpoint v.
    let mut layer: Vec<u128> = vec![1; n];
    for p in 1..=kmax {
        let next_len = choose[n][p + 1] as usize * (p + 1);
        let mut next = vec![0u128; next_len];
        let mut mask: u64 = (1u64 << p) - 1;
        let last: u64 = mask << (n - p);
        let mut rank = 0usize;
        loop {
            let base = rank * p;
            let mut members = mask;
            let mut slot = 0usize;
            while members != 0 {
                let v = members.trailing_zeros() as usize;
                members &= members - 1;
                let count = layer[base + slot];
                slot += 1;
                if count == 0 {
                    continue;
                }
                let mut ext = rows[v] & !mask;
                while ext != 0 {
                    let u = ext.trailing_zeros() as usize;
                    ext &= ext - 1;
                    let grown = mask | (1u64 << u);
                    let grown_rank = colex_rank(grown, &choose);
                    let endpoint = (grown & ((1u64 << u) - 1)).count_ones() as usize;
                    next[grown_rank * (p + 1) + endpoint] += count;
                }
            }
            if mask == last {
                break;
            }
            mask = next_same_popcount(mask);
            rank += 1;
        }
        layer = next;
        let sum: u128 = layer.iter().sum();
        totals[p] = u128_to_biguint(sum);
    }
    totals
}

/// Colex rank of a fixed-popcount mask: with ascending set bits
/// b_0 < b_1 < ..., the rank is sum_i C(b_i, i+1). Increasing numeric order
/// of same-popcount masks is exactly colex order.
fn colex_rank(mask: u64, choose: &[Vec<u64>]) -> usize {
    let mut rank = 0u64;
    let mut bits = mask;
    let mut idx = 1usize;
    while bits != 0 {
        let b = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        rank += choose[b][idx];
        idx += 1;
    }
    rank as usize
}

/// Gosper's hack: next mask with the same popcount.
fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Pascal triangle up to C(n, n+1); entries above the diagonal stay zero.
fn binom_table(n: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; n + 2]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
        }
    }
    c
}

/// Counts directed k-edge walks (vertices may repeat) as `1^T A^k 1` over
/// exact integers, via repeated matrix-vector products.
pub fn count_walks(t: &Tournament, k: usize) -> BigUint {
    let n = t.n();
    let mut v: Vec<BigUint> = vec![BigUint::one(); n];
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); n];
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in t.out_neighbors(i) {
                next[j] += &v[i];
            }
        }
        v = next;
    }
    v.into_iter().sum()
}

/// Counts k-edge paths (DFS engine) and checks them against both bounds.
pub fn check_path_bounds(t: &Tournament, k: usize) -> PathBoundCertificate {
    PathBoundCertificate::new(t.n(), k, count_paths_dfs(t, k))
}

fn u128_to_biguint(x: u128) -> BigUint {
    BigUint::from(x >> 64) << 64 | BigUint::from(x as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Tournament;
    use proptest::prelude::*;

    /// Independent oracle: enumerate every injective (k+1)-sequence and
    /// check consecutive edges directly. Exponential; test-only.
    fn brute_force_paths(t: &Tournament, k: usize) -> u64 {
        fn extend(t: &Tournament, seq: &mut Vec<usize>, left: usize, hits: &mut u64) {
            if left == 0 {
                *hits += 1;
                return;
            }
            let last = *seq.last().unwrap();
            for v in 0..t.n() {
                if !seq.contains(&v) && t.has_edge(last, v) {
                    seq.push(v);
                    extend(t, seq, left - 1, hits);
                    seq.pop();
                }
            }
        }
        let mut hits = 0;
        for start in 0..t.n() {
            let mut seq = vec![start];
            extend(t, &mut seq, k, &mut hits);
        }
        hits
    }

    fn cyclic_triangle() -> Tournament {
        Tournament::rotational(3).unwrap()
    }

    #[test]
    fn dfs_examples() {
        assert_eq!(count_paths_dfs(&cyclic_triangle(), 2), BigUint::from(3u32));
        assert_eq!(
            count_paths_dfs(&Tournament::transitive(3).unwrap(), 2),
            BigUint::from(1u32)
        );
        let t = Tournament::random(9, 5).unwrap();
        assert_eq!(count_paths_dfs(&t, 0), BigUint::from(9u32));
        assert_eq!(count_paths_dfs(&t, 1), BigUint::from(36u32)); // n(n-1)/2
        assert_eq!(count_paths_dfs(&t, 9), BigUint::zero());
    }

    #[test]
    fn subset_dp_examples() {
        assert_eq!(
            count_paths_subset_dp(&Tournament::rotational(5).unwrap(), 2).unwrap(),
            BigUint::from(20u32)
        );
        assert_eq!(
            count_paths_subset_dp(&Tournament::transitive(4).unwrap(), 3).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            count_all_paths(&cyclic_triangle()).unwrap(),
            vec![BigUint::from(3u32); 3]
        );
    }

    #[test]
    fn subset_dp_rejects_large_n() {
        let t = Tournament::transitive(25).unwrap();
        assert_eq!(
            count_paths_subset_dp(&t, 3).unwrap_err(),
            PathError::TooManyVertices { n: 25, max: 24 }
        );
    }

    #[test]
    fn subset_dp_degenerate_k() {
        let t = Tournament::random(5, 3).unwrap();
        assert_eq!(count_paths_subset_dp(&t, 5).unwrap(), BigUint::zero());
        assert_eq!(count_paths_subset_dp(&t, 40).unwrap(), BigUint::zero());
        assert_eq!(count_paths_subset_dp(&t, 0).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn subset_dp_matches_dfs_at_larger_n() {
        // exercises the layer ranking well beyond the small-n regime
        for seed in 0..3u64 {
            let t = Tournament::random(20, seed).unwrap();
            for k in [1usize, 2, 3] {
                assert_eq!(count_paths_subset_dp(&t, k).unwrap(), count_paths_dfs(&t, k));
            }
        }
        let t = Tournament::random(12, 99).unwrap();
        assert_eq!(
            count_paths_subset_dp(&t, 11).unwrap(),
            count_paths_dfs(&t, 11)
        );
    }

    #[test]
    fn engines_match_brute_force() {
        for n in 1..=5usize {
            for seed in 0..8u64 {
                let t = Tournament::random(n, seed).unwrap();
                for k in 0..n {
                    let expected = BigUint::from(brute_force_paths(&t, k));
                    assert_eq!(count_paths_dfs(&t, k), expected, "dfs n={n} k={k} seed={seed}");
                    assert_eq!(
                        count_paths_subset_dp(&t, k).unwrap(),
                        expected,
                        "dp n={n} k={k} seed={seed}"
                    );
                }
            }
        }
    }

    #[test]
    fn walks_examples() {
        assert_eq!(count_walks(&Tournament::transitive(3).unwrap(), 2), BigUint::one());
        assert_eq!(count_walks(&cyclic_triangle(), 2), BigUint::from(3u32));
        let t = Tournament::random(7, 1).unwrap();
        assert_eq!(count_walks(&t, 0), BigUint::from(7u32));
    }

    #[test]
    fn walks_exceed_native_width() {
        // (n/2)^k growth: 10 * 4.5^60-ish dwarfs u64; exercise bigint path.
        let t = Tournament::rotational(9).unwrap();
        let w = count_walks(&t, 40);
        assert!(w > BigUint::from(u64::MAX));
        // regular tournament: every vertex has outdegree 4, so walks = 9*4^40
        assert_eq!(w, BigUint::from(9u32) * BigUint::from(4u32).pow(40));
    }

    #[test]
    fn hamilton_examples() {
        assert_eq!(hamilton_path_count(&cyclic_triangle()).unwrap(), BigUint::from(3u32));
        for n in [2usize, 5, 9] {
            assert_eq!(
                hamilton_path_count(&Tournament::transitive(n).unwrap()).unwrap(),
                BigUint::one()
            );
        }
        // every tournament has one; spot-check all n <= 10
        for n in 1..=10usize {
            for seed in 0..10 {
                let t = Tournament::random(n, seed).unwrap();
                assert!(hamilton_path_count(&t).unwrap() >= BigUint::one());
            }
        }
    }

    #[test]
    fn bound_examples() {
        let b = bounds(3, 2);
        assert_eq!(b.upper, BigRational::new(BigInt::from(27), BigInt::from(4)));
        assert_eq!(b.lower, BigUint::one());

        let b = bounds(8, 2);
        assert_eq!(b.upper, BigRational::from_integer(BigInt::from(128)));
        assert_eq!(b.lower, BigUint::from(56u32));

        for n in 1..10usize {
            let b = bounds(n, 0);
            assert_eq!(b.upper, BigRational::from_integer(BigInt::from(n as u64)));
            assert_eq!(b.lower, BigUint::from(n));
        }
    }

    #[test]
    fn certificate_examples() {
        let c = check_path_bounds(&cyclic_triangle(), 2);
        assert_eq!(c.count, BigUint::from(3u32));
        assert!(c.pass());

        let c = check_path_bounds(&Tournament::transitive(8).unwrap(), 2);
        assert_eq!(c.count, BigUint::from(56u32));
        assert_eq!(c.bounds.lower, BigUint::from(56u32)); // lower bound tight
        assert!(c.pass());
    }

    #[test]
    fn wide_representation_counts() {
        // n > 64 exercises the row-of-booleans fallback in both engines;
        // on a transitive tournament every k-edge count is binom(n, k+1)
        // and walks coincide with paths.
        let t = Tournament::transitive(70).unwrap();
        assert_eq!(count_paths_dfs(&t, 1), binomial(70, 2));
        assert_eq!(count_paths_dfs(&t, 2), binomial(70, 3));
        assert_eq!(count_walks(&t, 2), binomial(70, 3));

        let r = Tournament::random(70, 4).unwrap();
        let stats = r.degree_stats();
        let closed: u64 = (0..70)
            .map(|v| (stats.indegrees[v] * stats.outdegrees[v]) as u64)
            .sum();
        assert_eq!(count_paths_dfs(&r, 2), BigUint::from(closed));
        assert!(count_paths_dfs(&r, 2) <= count_walks(&r, 2));
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(4, 7), BigUint::zero());
    }

    proptest! {
        #[test]
        fn dfs_equals_dp(n in 1usize..=8, seed in 0u64..1000) {
            let t = Tournament::random(n, seed).unwrap();
            for k in 0..n {
                prop_assert_eq!(
                    count_paths_dfs(&t, k),
                    count_paths_subset_dp(&t, k).unwrap()
                );
            }
        }

        #[test]
        fn paths_dominated_by_walks(n in 1usize..=9, seed in 0u64..500) {
            let t = Tournament::random(n, seed).unwrap();
            for k in 0..n {
                let paths = count_paths_dfs(&t, k);
                let walks = count_walks(&t, k);
                prop_assert!(paths <= walks);
                if k <= 1 {
                    prop_assert_eq!(paths, walks);
                }
            }
        }

        #[test]
        fn two_edge_paths_closed_form(n in 2usize..=20, seed in 0u64..500) {
            let t = Tournament::random(n, seed).unwrap();
            let stats = t.degree_stats();
            let closed: u64 = (0..n)
                .map(|v| (stats.indegrees[v] * stats.outdegrees[v]) as u64)
                .sum();
            prop_assert_eq!(count_paths_dfs(&t, 2), BigUint::from(closed));
        }

        #[test]
        fn bound_sandwich(n in 1usize..=9, seed in 0u64..300) {
            let t = Tournament::random(n, seed).unwrap();
            for k in 0..n {
                let cert = check_path_bounds(&t, k);
                prop_assert!(cert.pass(), "n={} k={} count={}", n, k, cert.count);
            }
        }

        #[test]
        fn bounds_ordered(n in 1usize..=30, k in 0usize..=12) {
            let b = bounds(n, k);
            let lower = BigRational::from_integer(BigInt::from(b.lower.clone()));
            prop_assert!(lower <= b.upper);
        }
    }
}
