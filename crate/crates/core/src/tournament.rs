//! Tournament representation, validation, generators, and the `.trn` text format.
//!
//! A tournament is an orientation of the complete graph: for every pair of
//! distinct vertices `i`, `j` exactly one of the edges `i -> j`, `j -> i` is
//! present. Vertices are 0-based everywhere, including file formats.
//!
//! Adjacency is stored as one out-neighbor bitmask row per vertex when
//! `n <= 64`, with a plain row-of-booleans fallback for larger `n`. All
//! values are immutable after construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest vertex count representable with one `u64` bitmask row per vertex.
pub const BITMASK_MAX: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TournamentError {
    /// Diagonal entry set: vertex has an edge to itself.
    #[error("SelfLoop({0})")]
    SelfLoop(usize),
    /// Both or neither of the two orientations of a pair are present.
    #[error("NotAntisymmetric({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("adjacency matrix is not square: row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("tournament needs at least one vertex")]
    NoVertices,
    #[error("vertex count must be odd, got {0}")]
    NotOdd(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 3 mod 4")]
    WrongResidue(u64),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Adjacency {
    /// `rows[i]` has bit `j` set iff the edge `i -> j` is present (`n <= 64`).
    Bits(Vec<u64>),
    /// Fallback for `n > 64`.
    Wide(Vec<Vec<bool>>),
}

/// An immutable `n`-vertex tournament.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    adj: Adjacency,
}

/// Exact per-vertex degree data plus the indegree-deviation statistics
/// `deviation_sum = sum_v |indeg(v) - n/2|` and `epsilon = deviation_sum / n^2`,
/// both kept as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub indegrees: Vec<usize>,
    pub outdegrees: Vec<usize>,
    pub deviation_sum: BigRational,
    pub epsilon: BigRational,
}

impl Tournament {
    /// Builds a tournament from an edge predicate. The predicate must define
    /// a valid orientation; this is debug-asserted, not checked in release.
    fn from_edge_fn(n: usize, edge: impl Fn(usize, usize) -> bool) -> Self {
        debug_assert!(n >= 1);
        let adj = if n <= BITMASK_MAX {
            let mut rows = vec![0u64; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j && edge(i, j) {
                        rows[i] |= 1u64 << j;
                    }
                }
            }
            Adjacency::Bits(rows)
        } else {
            let mut rows = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j && edge(i, j) {
                        rows[i][j] = true;
                    }
                }
            }
            Adjacency::Wide(rows)
        };
        let t = Tournament { n, adj };
        debug_assert!(t.invariants_hold());
        t
    }

    /// Direct invariant check on the stored adjacency (no self-loops,
    /// exactly one orientation per pair).
    fn invariants_hold(&self) -> bool {
        for i in 0..self.n {
            if self.has_edge(i, i) {
                return false;
            }
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) == self.has_edge(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Validates a raw adjacency matrix: square, no self-loops, exactly one
    /// orientation per pair. Returns the immutable tournament on success.
    pub fn validate(raw: &[Vec<bool>]) -> Result<Self, TournamentError> {
        let n = raw.len();
        if n == 0 {
            return Err(TournamentError::NoVertices);
        }
        for (i, row) in raw.iter().enumerate() {
            if row.len() != n {
                return Err(TournamentError::NotSquare { row: i, len: row.len(), n });
            }
        }
        for i in 0..n {
            if raw[i][i] {
                return Err(TournamentError::SelfLoop(i));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if raw[i][j] == raw[j][i] {
                    return Err(TournamentError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(Self::from_edge_fn(n, |i, j| raw[i][j]))
    }

    /// The transitive tournament: edge `i -> j` iff `i < j`.
    pub fn transitive(n: usize) -> Result<Self, TournamentError> {
        if n == 0 {
            return Err(TournamentError::NoVertices);
        }
        Ok(Self::from_edge_fn(n, |i, j| i < j))
    }

    /// The rotational (circulant) tournament on odd `n`: edge `i -> j` iff
    /// `(j - i) mod n` lies in `{1, ..., (n-1)/2}`. Every vertex has
    /// indegree and outdegree `(n-1)/2`.
    pub fn rotational(n: usize) -> Result<Self, TournamentError> {
        if n == 0 {
            return Err(TournamentError::NoVertices);
        }
        if n % 2 == 0 {
            return Err(TournamentError::NotOdd(n));
        }
        let half = (n - 1) / 2;
        Ok(Self::from_edge_fn(n, |i, j| {
            let d = (j + n - i) % n;
            (1..=half).contains(&d)
        }))
    }

    /// The Paley tournament on a prime `q` congruent to 3 mod 4: edge
    /// `i -> j` iff `j - i` is a nonzero quadratic residue mod `q`. The
    /// residue condition makes this a regular tournament with indegree
    /// `(q-1)/2`.
    pub fn paley(q: u64) -> Result<Self, TournamentError> {
        if !is_prime(q) {
            return Err(TournamentError::NotPrime(q));
        }
        if q % 4 != 3 {
            return Err(TournamentError::WrongResidue(q));
        }
        let qu = q as usize;
        let mut residue = vec![false; qu];
        for x in 1..q {
            let sq = ((x as u128 * x as u128) % q as u128) as usize;
            residue[sq] = true;
        }
        Ok(Self::from_edge_fn(qu, |i, j| {
            residue[(j + qu - i) % qu]
        }))
    }

    /// A uniform random tournament: each pair's orientation is an
    /// independent fair coin, drawn from a ChaCha8 stream seeded with
    /// `seed`. The same `(n, seed)` always yields the same tournament.
    pub fn random(n: usize, seed: u64) -> Result<Self, TournamentError> {
        if n == 0 {
            return Err(TournamentError::NoVertices);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // One bit per pair, pairs in row-major upper-triangle order.
        let mut forward = vec![false; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                forward[i * n + j] = rng.next_u64() & 1 == 1;
            }
        }
        Ok(Self::from_edge_fn(n, |i, j| {
            if i < j {
                forward[i * n + j]
            } else {
                !forward[j * n + i]
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        match &self.adj {
            Adjacency::Bits(rows) => rows[i] >> j & 1 == 1,
            Adjacency::Wide(rows) => rows[i][j],
        }
    }

    /// Out-neighbor bitmask rows, available iff `n <= 64`. Counting engines
    /// use these directly.
    pub fn bit_rows(&self) -> Option<&[u64]> {
        match &self.adj {
            Adjacency::Bits(rows) => Some(rows),
            Adjacency::Wide(_) => None,
        }
    }

    /// Out-neighbors of `v` in increasing label order.
    pub fn out_neighbors(&self, v: usize) -> OutNeighbors<'_> {
        OutNeighbors {
            inner: match &self.adj {
                Adjacency::Bits(rows) => Inner::Bits { mask: rows[v] },
                Adjacency::Wide(rows) => Inner::Wide { row: &rows[v], next: 0 },
            },
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        match &self.adj {
            Adjacency::Bits(rows) => rows[v].count_ones() as usize,
            Adjacency::Wide(rows) => rows[v].iter().filter(|&&b| b).count(),
        }
    }

    /// In a tournament `indeg(v) = n - 1 - outdeg(v)`.
    pub fn in_degree(&self, v: usize) -> usize {
        self.n - 1 - self.out_degree(v)
    }

    /// A tournament is transitive iff its outdegrees are pairwise distinct
    /// (equivalently, the score sequence is `0, 1, ..., n-1`).
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.n];
        for v in 0..self.n {
            let d = self.out_degree(v);
            if seen[d] {
                return false;
            }
            seen[d] = true;
        }
        true
    }

    /// Exact degree statistics; see [`DegreeStats`].
    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.n;
        let outdegrees: Vec<usize> = (0..n).map(|v| self.out_degree(v)).collect();
        let indegrees: Vec<usize> = outdegrees.iter().map(|&d| n - 1 - d).collect();
        // sum_v |indeg(v) - n/2| = (1/2) sum_v |2 indeg(v) - n|, exact in halves.
        let twice: u64 = indegrees
            .iter()
            .map(|&d| (2 * d as i64 - n as i64).unsigned_abs())
            .sum();
        let deviation_sum = BigRational::new(BigInt::from(twice), BigInt::from(2));
        let epsilon = &deviation_sum / BigRational::from_integer(BigInt::from(n as u64 * n as u64));
        DegreeStats { indegrees, outdegrees, deviation_sum, epsilon }
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| i != j && self.has_edge(i, j)).collect())
            .collect()
    }

    /// Serializes to the `.trn` text format: line 1 is the decimal vertex
    /// count, lines 2..n+1 are rows of `'0'`/`'1'` characters where column
    /// `j` of row `i` is `'1'` iff the edge `i -> j` is present. Exactly one
    /// trailing newline.
    pub fn to_trn(&self) -> String {
        let mut out = String::with_capacity((self.n + 2) * (self.n + 1));
        out.push_str(&self.n.to_string());
        out.push('\n');
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(if i != j && self.has_edge(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `.trn` format. The parser is strict: the header must be a
    /// canonical decimal, every row must have exactly `n` characters from
    /// `{'0','1'}`, trailing garbage is rejected, and both tournament
    /// invariants are enforced bit-exactly.
    pub fn parse_trn(input: &str) -> Result<Self, TournamentError> {
        let mut lines: Vec<&str> = input.split('\n').collect();
        // A single trailing newline produces one empty final fragment.
        if lines.last() == Some(&"") {
            lines.pop();
        }
        if lines.is_empty() {
            return Err(TournamentError::Format { line: 1, msg: "empty input".into() });
        }
        let header = lines[0];
        let n: usize = header
            .parse()
            .map_err(|_| TournamentError::Format {
                line: 1,
                msg: format!("bad vertex count {header:?}"),
            })?;
        if n.to_string() != header {
            return Err(TournamentError::Format {
                line: 1,
                msg: format!("non-canonical vertex count {header:?}"),
            });
        }
        if n == 0 {
            return Err(TournamentError::NoVertices);
        }
        if lines.len() != n + 1 {
            return Err(TournamentError::Format {
                line: lines.len().min(n + 1) + 1,
                msg: format!("expected {} rows, found {}", n, lines.len() - 1),
            });
        }
        let mut raw = vec![vec![false; n]; n];
        for (i, line) in lines[1..].iter().enumerate() {
            if line.len() != n {
                return Err(TournamentError::Format {
                    line: i + 2,
                    msg: format!("row has {} characters, expected {}", line.len(), n),
                });
            }
            for (j, ch) in line.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => raw[i][j] = true,
                    _ => {
                        return Err(TournamentError::Format {
                            line: i + 2,
                            msg: format!("invalid character {:?}", ch as char),
                        })
                    }
                }
            }
        }
        Self::validate(&raw)
    }
}

pub struct OutNeighbors<'a> {
    inner: Inner<'a>,
}

enum Inner<'a> {
    Bits { mask: u64 },
    Wide { row: &'a [bool], next: usize },
}

impl Iterator for OutNeighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match &mut self.inner {
            Inner::Bits { mask } => {
                if *mask == 0 {
                    None
                } else {
                    let v = mask.trailing_zeros() as usize;
                    *mask &= *mask - 1;
                    Some(v)
                }
            }
            Inner::Wide { row, next } => {
                while *next < row.len() {
                    let v = *next;
                    *next += 1;
                    if row[v] {
                        return Some(v);
                    }
                }
                None
            }
        }
    }
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
