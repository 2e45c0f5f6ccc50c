//! Exhaustive census over all labeled tournaments on small vertex counts:
//! extremal k-edge path counts with witnesses, bound verification, and the
//! Hamilton-path / Szele desk checks.
//!
//! Tournaments are enumerated by an integer code whose bits are the
//! upper-triangle entries `A[i][j]` (`i < j`) in row-major order, most
//! significant bit first, so increasing code order is lexicographic order
//! of the entry string and `code 0` orients every pair downward. Ties for
//! a witness always go to the smallest code, which makes the scan's result
//! independent of how the code space is partitioned across workers.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::paths::{binomial, bounds, factorial, BoundPair};
use crate::tournament::Tournament;
use thiserror::Error;

/// Census guard: full scans above 7 vertices are refused without force.
pub const CENSUS_MAX_N: usize = 7;
/// Hard ceiling even when forced: codes must fit in a u64.
pub const CENSUS_FORCE_MAX_N: usize = 11;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("census infeasible for n={n}: limit is {max} vertices (use force to override up to {force_max})", max = CENSUS_MAX_N, force_max = CENSUS_FORCE_MAX_N)]
    TooLarge { n: usize },
    #[error("census needs at least one vertex")]
    NoVertices,
    #[error("k={k} out of range for n={n}: paths have at most n-1 edges")]
    KOutOfRange { n: usize, k: usize },
}

/// Number of pair bits for an n-vertex code.
fn edge_bits(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// Decodes an upper-triangle code into a tournament.
pub fn tournament_from_code(n: usize, code: u64) -> Tournament {
    let e = edge_bits(n);
    let mut raw = vec![vec![false; n]; n];
    let mut p = 0u32;
    for i in 0..n {
        for j in (i + 1)..n {
            let forward = code >> (e - 1 - p) & 1 == 1;
            raw[i][j] = forward;
            raw[j][i] = !forward;
            p += 1;
        }
    }
    Tournament::validate(&raw).expect("decoded tournament is valid by construction")
}

/// Inverse of [`tournament_from_code`].
pub fn code_of(t: &Tournament) -> u64 {
    let n = t.n();
    let e = edge_bits(n);
    let mut code = 0u64;
    let mut p = 0u32;
    for i in 0..n {
        for j in (i + 1)..n {
            if t.has_edge(i, j) {
                code |= 1u64 << (e - 1 - p);
            }
            p += 1;
        }
    }
    code
}

/// Streams all `2^{n(n-1)/2}` labeled tournaments in increasing code order.
pub struct LabeledTournaments {
    n: usize,
    next: u64,
    end: u64,
}

impl LabeledTournaments {
    fn unchecked(n: usize) -> Self {
        LabeledTournaments { n, next: 0, end: 1u64 << edge_bits(n) }
    }
}

impl Iterator for LabeledTournaments {
    type Item = Tournament;

    fn next(&mut self) -> Option<Tournament> {
        if self.next == self.end {
            return None;
        }
        let t = tournament_from_code(self.n, self.next);
        self.next += 1;
        Some(t)
    }
}

/// Labeled enumeration for `1 <= n <= 7`.
pub fn enumerate_labeled(n: usize) -> Result<LabeledTournaments, CensusError> {
    check_n(n, false)?;
    Ok(LabeledTournaments::unchecked(n))
}

/// Guard override, still capped so codes fit in a u64 (`n <= 11`).
pub fn enumerate_labeled_forced(n: usize) -> Result<LabeledTournaments, CensusError> {
    check_n(n, true)?;
    Ok(LabeledTournaments::unchecked(n))
}

fn check_n(n: usize, force: bool) -> Result<(), CensusError> {
    if n == 0 {
        return Err(CensusError::NoVertices);
    }
    let max = if force { CENSUS_FORCE_MAX_N } else { CENSUS_MAX_N };
    if n > max {
        return Err(CensusError::TooLarge { n });
    }
    Ok(())
}

/// Extremal summary for one `(n, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusRecord {
    pub n: usize,
    pub k: usize,
    pub min_count: BigUint,
    pub max_count: BigUint,
    /// Smallest-code tournament attaining the minimum.
    pub min_witness: Tournament,
    /// Smallest-code tournament attaining the maximum.
    pub max_witness: Tournament,
    pub bounds: BoundPair,
    pub tournaments_scanned: u64,
    /// `lower <= min_count` and `max_count * 2^k <= n^{k+1}`, exact.
    pub bounds_ok: bool,
    /// `min_count == binom(n, k+1)`: the folklore minimum is attained.
    pub min_is_lower: bool,
}

/// Serialization mirror with the documented field order; counts are
/// decimal strings, the upper bound is a `p/q` string, witnesses are
/// `.trn` payloads.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CensusRecordDoc {
    pub n: usize,
    pub k: usize,
    pub min_count: String,
    pub max_count: String,
    pub upper: String,
    pub lower: String,
    pub min_witness: String,
    pub max_witness: String,
    pub tournaments_scanned: u64,
}

impl CensusRecord {
    pub fn doc(&self) -> CensusRecordDoc {
        CensusRecordDoc {
            n: self.n,
            k: self.k,
            min_count: self.min_count.to_string(),
            max_count: self.max_count.to_string(),
            upper: self.bounds.upper.to_string(),
            lower: self.bounds.lower.to_string(),
            min_witness: self.min_witness.to_trn(),
            max_witness: self.max_witness.to_trn(),
            tournaments_scanned: self.tournaments_scanned,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.doc()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn csv_header() -> &'static str {
        "n,k,min_count,max_count,upper,lower,tournaments_scanned"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.min_count,
            self.max_count,
            self.bounds.upper,
            self.bounds.lower,
            self.tournaments_scanned
        )
    }
}

/// Hamilton-path extremes plus the probabilistic lower bound
/// `ceil(n!/2^{n-1})` that some tournament must attain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonCensus {
    pub n: usize,
    pub min_h: BigUint,
    pub max_h: BigUint,
    pub szele_lower: BigUint,
}

impl HamiltonCensus {
    /// Every tournament has a Hamilton path.
    pub fn min_h_positive(&self) -> bool {
        self.min_h >= BigUint::one()
    }

    /// Some tournament attains the expectation bound.
    pub fn szele_attained(&self) -> bool {
        self.max_h >= self.szele_lower
    }
}

/// Full scan output for one n: records for every `k <= n-1`, the Hamilton
/// summary, and the embedded theorem assertions.
#[derive(Debug, Clone)]
pub struct CensusRun {
    pub n: usize,
    pub scanned: u64,
    pub records: Vec<CensusRecord>,
    pub hamilton: HamiltonCensus,
    /// Every labeled transitive tournament attains `binom(n, k+1)` for
    /// every k, verified during the scan.
    pub transitive_min_verified: bool,
}

impl CensusRun {
    /// The stream covered all `2^{n(n-1)/2}` codes.
    pub fn scan_complete(&self) -> bool {
        self.scanned == 1u64 << edge_bits(self.n)
    }

    pub fn all_assertions_pass(&self) -> bool {
        self.scan_complete()
            && self.transitive_min_verified
            && self.records.iter().all(|r| r.bounds_ok && r.min_is_lower)
            && self.hamilton.min_h_positive()
            && self.hamilton.szele_attained()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CensusRecord::csv_header());
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.to_csv_row());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub jobs: usize,
    pub force: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { jobs: 1, force: false }
    }
}

/// Per-k running extremes with smallest-code witnesses.
#[derive(Debug, Clone, Copy)]
struct Extreme {
    min: u64,
    min_code: u64,
    max: u64,
    max_code: u64,
}

impl Extreme {
    fn new() -> Self {
        Extreme { min: u64::MAX, min_code: u64::MAX, max: 0, max_code: u64::MAX }
    }

    fn update(&mut self, count: u64, code: u64) {
        if count < self.min || (count == self.min && code < self.min_code) {
            self.min = count;
            self.min_code = code;
        }
        if count > self.max || (count == self.max && code < self.max_code) {
            self.max = count;
            self.max_code = code;
        }
    }

    fn merge(&mut self, other: &Extreme) {
        if other.min_code != u64::MAX {
            self.update(other.min, other.min_code);
            self.update(other.max, other.max_code);
        }
    }
}

struct ScanAccum {
    per_k: Vec<Extreme>,
    scanned: u64,
    transitive_ok: bool,
}

/// Scans a contiguous code range with a reusable subset-DP buffer. The DP
/// state is (vertex subset, endpoint); counts fit in u64 for every n this
/// module admits.
fn scan_range(n: usize, lo: u64, hi: u64, binom_row: &[u64]) -> ScanAccum {
    let e = edge_bits(n);
    let full: usize = 1usize << n;
    let mut rows = vec![0u64; n];
    let mut dp = vec![0u64; full * n];
    let mut totals = vec![0u64; n];
    let mut per_k = vec![Extreme::new(); n];
    let mut transitive_ok = true;
    let mut seen_degrees = vec![false; n];

    for code in lo..hi {
        // decode upper-triangle bits into out-neighbor masks
        rows.iter_mut().for_each(|r| *r = 0);
        let mut p = 0u32;
        for i in 0..n {
            for j in (i + 1)..n {
                if code >> (e - 1 - p) & 1 == 1 {
                    rows[i] |= 1u64 << j;
                } else {
                    rows[j] |= 1u64 << i;
                }
                p += 1;
            }
        }

        dp.iter_mut().for_each(|x| *x = 0);
        totals.iter_mut().for_each(|x| *x = 0);
        for v in 0..n {
            dp[(1usize << v) * n + v] = 1;
        }
        for mask in 1..full {
            let k_edges = mask.count_ones() as usize - 1;
            let base = mask * n;
            let mut members = mask as u64;
            while members != 0 {
                let v = members.trailing_zeros() as usize;
                members &= members - 1;
                let c = dp[base + v];
                if c == 0 {
                    continue;
                }
                totals[k_edges] += c;
                let mut ext = rows[v] & !(mask as u64);
                while ext != 0 {
                    let u = ext.trailing_zeros() as usize;
                    ext &= ext - 1;
                    dp[(mask | (1usize << u)) * n + u] += c;
                }
            }
        }

        for (k, extreme) in per_k.iter_mut().enumerate() {
            extreme.update(totals[k], code);
        }

        // transitive iff the outdegrees are pairwise distinct; those
        // tournaments must attain binom(n, k+1) for every k
        seen_degrees.iter_mut().for_each(|x| *x = false);
        let mut distinct = true;
        for row in &rows {
            let d = row.count_ones() as usize;
            if seen_degrees[d] {
                distinct = false;
                break;
            }
            seen_degrees[d] = true;
        }
        if distinct {
            for (k, &total) in totals.iter().enumerate() {
                if total != binom_row[k + 1] {
                    transitive_ok = false;
                }
            }
        }
    }

    ScanAccum { per_k, scanned: hi - lo, transitive_ok }
}

/// Runs the census for every `k <= n-1` in one scan. The code space is
/// split into contiguous ranges across `jobs` workers; merging is
/// associative and tie-breaks by smallest code, so the result does not
/// depend on the partition.
pub fn census_all(n: usize, opts: CensusOptions) -> Result<CensusRun, CensusError> {
    check_n(n, opts.force)?;
    let total: u64 = 1u64 << edge_bits(n);
    let jobs = opts.jobs.max(1).min(total.max(1) as usize);

    // u64 binomials for the in-scan transitive check
    let binom_row: Vec<u64> = (0..=n as u64 + 1)
        .map(|r| {
            use num_traits::ToPrimitive;
            binomial(n as u64, r).to_u64().expect("small binomial")
        })
        .collect();

    let mut accum = if jobs == 1 {
        scan_range(n, 0, total, &binom_row)
    } else {
        let chunk = total / jobs as u64;
        let partials: Vec<ScanAccum> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let binom_row = &binom_row;
                    let lo = w as u64 * chunk;
                    let hi = if w + 1 == jobs { total } else { lo + chunk };
                    scope.spawn(move || scan_range(n, lo, hi, binom_row))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("census worker")).collect()
        });
        let mut merged = ScanAccum {
            per_k: vec![Extreme::new(); n],
            scanned: 0,
            transitive_ok: true,
        };
        for part in partials {
            for (acc, other) in merged.per_k.iter_mut().zip(part.per_k.iter()) {
                acc.merge(other);
            }
            merged.scanned += part.scanned;
            merged.transitive_ok &= part.transitive_ok;
        }
        merged
    };

    let records: Vec<CensusRecord> = accum
        .per_k
        .drain(..)
        .enumerate()
        .map(|(k, ex)| {
            let b = bounds(n, k);
            let min_count = BigUint::from(ex.min);
            let max_count = BigUint::from(ex.max);
            let bounds_ok = b.lower <= min_count
                && (max_count.clone() << k) <= BigUint::from(n).pow(k as u32 + 1);
            let min_is_lower = min_count == b.lower;
            CensusRecord {
                n,
                k,
                min_count,
                max_count,
                min_witness: tournament_from_code(n, ex.min_code),
                max_witness: tournament_from_code(n, ex.max_code),
                bounds: b,
                tournaments_scanned: accum.scanned,
                bounds_ok,
                min_is_lower,
            }
        })
        .collect();

    let last = &records[n - 1];
    let den = BigUint::one() << (n - 1);
    let szele_lower = (factorial(n as u64) + &den - BigUint::one()) / den;
    let hamilton = HamiltonCensus {
        n,
        min_h: last.min_count.clone(),
        max_h: last.max_count.clone(),
        szele_lower,
    };

    Ok(CensusRun {
        n,
        scanned: accum.scanned,
        records,
        hamilton,
        transitive_min_verified: accum.transitive_ok,
    })
}

/// Census for a single `(n, k)`.
pub fn census(n: usize, k: usize, opts: CensusOptions) -> Result<CensusRecord, CensusError> {
    check_n(n, opts.force)?;
    if k >= n {
        return Err(CensusError::KOutOfRange { n, k });
    }
    let mut run = census_all(n, opts)?;
    Ok(run.records.swap_remove(k))
}

/// Hamilton extremes and the Szele lower bound for one n.
pub fn hamilton_census(n: usize, opts: CensusOptions) -> Result<HamiltonCensus, CensusError> {
    Ok(census_all(n, opts)?.hamilton)
}
