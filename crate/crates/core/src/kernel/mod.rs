//! Step-kernel evaluation: path densities, the iterated-averaging
//! recursion, the contraction trace behind the `2^{-k}` density bound, the
//! regularity (equality) diagnostics, the indegree-deviation stability
//! certificate, and a projected-gradient density maximizer.
//!
//! A step kernel is an m-by-m grid of values in `[0,1]` representing a
//! function `f` on the unit square, constant on the cells of the uniform
//! m-partition, and constrained by `f(x,y) + f(y,x) <= 1`: the limit
//! object of tournaments. Kernels come in two arithmetic modes (exact
//! rational and 64-bit float); every theorem-verification path runs in
//! exact mode.

mod knl;
mod optimize;
mod scalar;
mod stability;

pub use knl::{parse_knl, to_knl_exact, to_knl_float, AnyKernel};
pub use optimize::{maximize_density, maximize_density_multi, path_density_gradient, OptimizeOutcome};
pub use scalar::Scalar;
pub use stability::{check_stability, stability_certificate, StabilityCertificate};

use num_rational::BigRational;
use rand_chacha::rand_core::RngCore;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tournament::Tournament;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    /// Entry outside `[0,1]` (beyond tolerance in float mode).
    #[error("OutOfRange({0},{1})")]
    OutOfRange(usize, usize),
    /// `w[i][j] + w[j][i] > 1` (beyond tolerance in float mode).
    #[error("SkewSumExceeded({0},{1})")]
    SkewSumExceeded(usize, usize),
    #[error("kernel matrix is not square: row {row} has length {len}, expected {m}")]
    NotSquare { row: usize, len: usize, m: usize },
    #[error("kernel needs at least one block")]
    Empty,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("step size must be positive and finite")]
    BadStepSize,
    #[error("iteration count must be positive")]
    BadIterations,
    #[error("start count must be positive")]
    BadStarts,
}

/// A step function on the unit square with values in `[0,1]` and
/// `w[i][j] + w[j][i] <= 1` for all `i, j` (the diagonal is forced to at
/// most 1/2). Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct StepKernel<T: Scalar> {
    m: usize,
    w: Vec<T>, // row-major m*m
}

impl<T: Scalar> StepKernel<T> {
    /// Validates raw values and builds the kernel. Exact mode enforces the
    /// constraints exactly; float mode allows slack 1e-12, then clamps the
    /// accepted values back onto the feasible set.
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self, KernelError> {
        let m = rows.len();
        if m == 0 {
            return Err(KernelError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(KernelError::NotSquare { row: i, len: row.len(), m });
            }
        }
        let tol = T::slack();
        let zero = T::zero();
        let one = T::one();
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v < zero.clone() - tol.clone() || *v > one.clone() + tol.clone() {
                    return Err(KernelError::OutOfRange(i, j));
                }
            }
        }
        for i in 0..m {
            for j in i..m {
                let sum = rows[i][j].clone() + rows[j][i].clone();
                if sum > one.clone() + tol.clone() {
                    return Err(KernelError::SkewSumExceeded(i, j));
                }
            }
        }
        let mut w: Vec<T> = rows.into_iter().flatten().collect();
        if !T::EXACT {
            // Repair the accepted slack so downstream inequalities see a
            // strictly feasible kernel: settle pair sums first, then clamp
            // the range. (Clamping to zero can only lower a pair sum.)
            let half = T::ratio(1, 2);
            for i in 0..m {
                for j in i..m {
                    let sum = w[i * m + j].clone() + w[j * m + i].clone();
                    if sum > one.clone() {
                        let shave = (sum - one.clone()) * half.clone();
                        w[i * m + j] = w[i * m + j].clone() - shave.clone();
                        if i != j {
                            w[j * m + i] = w[j * m + i].clone() - shave;
                        } else {
                            w[i * m + i] = w[i * m + i].clone() - shave;
                        }
                    }
                }
            }
            for v in w.iter_mut() {
                if *v < zero {
                    *v = T::zero();
                } else if *v > one {
                    *v = T::one();
                }
            }
        }
        Ok(StepKernel { m, w })
    }

    /// Builds a kernel without validating the invariants. Intended for
    /// values that are feasible by construction and for evaluating the
    /// density at slightly perturbed points (finite differences); the
    /// proven inequalities are only guaranteed on feasible kernels.
    pub fn from_values_unchecked(m: usize, w: Vec<T>) -> Self {
        assert_eq!(w.len(), m * m, "need m*m values");
        StepKernel { m, w }
    }

    /// The constant-1/2 kernel, the quasirandom optimum.
    pub fn constant_half(m: usize) -> Self {
        let half = T::ratio(1, 2);
        StepKernel { m, w: vec![half; m * m] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.w[i * self.m + j]
    }

    pub fn values(&self) -> &[T] {
        &self.w
    }

    /// Copy of the kernel with every diagonal entry replaced by `v`
    /// (re-validated: `v` must not exceed 1/2).
    pub fn with_diagonal(&self, v: T) -> Result<Self, KernelError> {
        let mut rows: Vec<Vec<T>> = (0..self.m)
            .map(|i| self.w[i * self.m..(i + 1) * self.m].to_vec())
            .collect();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = v.clone();
        }
        Self::new(rows)
    }

    /// The iterated averaging `g_0 = 1`,
    /// `g_t[j] = (1/m) * sum_i g_{t-1}[i] * w[i][j]`, returned for
    /// `t = 0..=k`. Every entry stays in `[0,1]`.
    pub fn g_recursion(&self, k: usize) -> Vec<Vec<T>> {
        let m = self.m;
        let inv_m = T::ratio(1, m as u64);
        let mut gs = Vec::with_capacity(k + 1);
        gs.push(vec![T::one(); m]);
        for t in 1..=k {
            let prev = &gs[t - 1];
            let mut g = Vec::with_capacity(m);
            for j in 0..m {
                let mut acc = T::zero();
                for (i, p) in prev.iter().enumerate() {
                    acc = acc + p.clone() * self.w[i * m + j].clone();
                }
                g.push(acc * inv_m.clone());
            }
            gs.push(g);
        }
        gs
    }

    /// The k-edge path density: the mean of `g_k`. Exact in rational mode;
    /// float mode sums in ascending index order.
    pub fn path_density(&self, k: usize) -> T {
        let gs = self.g_recursion(k);
        mean(gs.last().unwrap())
    }

    /// Block in-densities `d[j] = (1/m) sum_i w[i][j]` (column averages).
    pub fn in_densities(&self) -> Vec<T> {
        let m = self.m;
        let inv_m = T::ratio(1, m as u64);
        (0..m)
            .map(|j| {
                let mut acc = T::zero();
                for i in 0..m {
                    acc = acc + self.w[i * m + j].clone();
                }
                acc * inv_m.clone()
            })
            .collect()
    }

    /// Block out-densities (row averages).
    pub fn out_densities(&self) -> Vec<T> {
        let m = self.m;
        let inv_m = T::ratio(1, m as u64);
        (0..m)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..m {
                    acc = acc + self.w[i * m + j].clone();
                }
                acc * inv_m.clone()
            })
            .collect()
    }

    /// Edge density `e = (1/m^2) sum_{i,j} w[i][j]`; always at most 1/2.
    pub fn edge_density(&self) -> T {
        mean(&self.out_densities())
    }

    /// Distance from in-regularity: `(1/m) sum_j |1 - 2 d[j]|` over the
    /// in-densities. Zero iff every block in-density is exactly 1/2, the
    /// equality case of the density bound.
    pub fn regularity_gap(&self) -> T {
        regularity_gap_of(&self.in_densities())
    }

    /// Out-density variant of [`regularity_gap`](Self::regularity_gap),
    /// exposed for symmetry; certificates use the in-density form.
    pub fn regularity_gap_out(&self) -> T {
        regularity_gap_of(&self.out_densities())
    }

    /// Traces the proof chain of the density bound for a k-edge path,
    /// `k >= 1`: the functionals `A_t = (1/m^2) sum_{y,z} g_t[y]^2 w[y][z]`
    /// for `t = 1..k-1` with their contraction ratios against `A_0 = e`,
    /// then the final Cauchy-Schwarz comparison
    /// `density <= sqrt(A_{k-1} * e) <= 2^{-k}`. Comparisons are performed
    /// on squares, so exact mode never needs a square root.
    pub fn chain_trace(&self, k: usize) -> ChainTrace<T> {
        assert!(k >= 1, "chain trace needs k >= 1");
        let m = self.m;
        let inv_m2 = T::ratio(1, (m * m) as u64);
        let quarter = T::ratio(1, 4);
        let slack = T::slack();
        let gs = self.g_recursion(k);

        let row_sums: Vec<T> = (0..m)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..m {
                    acc = acc + self.w[i * m + j].clone();
                }
                acc
            })
            .collect();

        let a_of = |g: &[T]| {
            let mut acc = T::zero();
            for (y, gy) in g.iter().enumerate() {
                acc = acc + gy.clone() * gy.clone() * row_sums[y].clone();
            }
            acc * inv_m2.clone()
        };

        let edge_density = {
            let mut acc = T::zero();
            for rs in &row_sums {
                acc = acc + rs.clone();
            }
            acc * inv_m2.clone()
        };
        let edge_density_ok =
            edge_density <= T::ratio(1, 2) + slack.clone();

        let mut steps = Vec::new();
        let mut a_prev = edge_density.clone(); // A_0 = integral of g_0^2 f = e
        for (t, g) in gs.iter().enumerate().take(k).skip(1) {
            let a_t = a_of(g);
            let ratio = if a_prev > T::zero() {
                Some(a_t.div(&a_prev))
            } else {
                None
            };
            let contraction_ok =
                a_t.clone() <= a_prev.clone() * quarter.clone() + slack.clone();
            steps.push(ChainStep { t, a: a_t.clone(), ratio, contraction_ok });
            a_prev = a_t;
        }
        let a_last = a_prev;

        let density = mean(gs.last().unwrap());
        let cs_rhs_sq = a_last.clone() * edge_density.clone();
        let cauchy_schwarz_ok = if T::EXACT {
            density.clone() * density.clone() <= cs_rhs_sq
        } else {
            density.to_f64() <= cs_rhs_sq.to_f64().max(0.0).sqrt() + slack.to_f64()
        };
        // A_{k-1} * e <= 4^{-k} pins sqrt(A_{k-1} e) <= 2^{-k}.
        let chain_bound_ok = cs_rhs_sq.clone() <= T::inv_pow2(2 * k as u32) + slack.clone();
        let density_bound_ok = density <= T::inv_pow2(k as u32) + slack;

        ChainTrace {
            k,
            edge_density,
            edge_density_ok,
            steps,
            density,
            a_last,
            cauchy_schwarz_ok,
            chain_bound_ok,
            density_bound_ok,
        }
    }
}

/// One step of the contraction chain: `A_t`, the ratio `A_t / A_{t-1}`
/// (absent when the previous functional is zero), and the exact comparison
/// `A_t <= A_{t-1}/4`.
#[derive(Debug, Clone)]
pub struct ChainStep<T: Scalar> {
    pub t: usize,
    pub a: T,
    pub ratio: Option<T>,
    pub contraction_ok: bool,
}

/// Full record of the density-bound proof chain for one kernel and one k.
#[derive(Debug, Clone)]
pub struct ChainTrace<T: Scalar> {
    pub k: usize,
    pub edge_density: T,
    pub edge_density_ok: bool,
    pub steps: Vec<ChainStep<T>>,
    pub density: T,
    pub a_last: T,
    /// `density^2 <= A_{k-1} * e` (float mode compares against the root).
    pub cauchy_schwarz_ok: bool,
    /// `A_{k-1} * e <= 4^{-k}`.
    pub chain_bound_ok: bool,
    /// `density <= 2^{-k}` directly.
    pub density_bound_ok: bool,
}

impl<T: Scalar> ChainTrace<T> {
    pub fn pass(&self) -> bool {
        self.edge_density_ok
            && self.steps.iter().all(|s| s.contraction_ok)
            && self.cauchy_schwarz_ok
            && self.chain_bound_ok
            && self.density_bound_ok
    }

    /// Display-only approximation of `sqrt(A_{k-1})`.
    pub fn sqrt_a_last_f64(&self) -> f64 {
        self.a_last.to_f64().max(0.0).sqrt()
    }

    /// Display-only approximation of the Cauchy-Schwarz product
    /// `sqrt(A_{k-1} * e)`.
    pub fn cs_product_f64(&self) -> f64 {
        (self.a_last.to_f64() * self.edge_density.to_f64()).max(0.0).sqrt()
    }
}

fn mean<T: Scalar>(xs: &[T]) -> T {
    let inv = T::ratio(1, xs.len() as u64);
    let mut acc = T::zero();
    for x in xs {
        acc = acc + x.clone();
    }
    acc * inv
}

fn regularity_gap_of<T: Scalar>(densities: &[T]) -> T {
    let two = T::ratio(2, 1);
    let gaps: Vec<T> = densities
        .iter()
        .map(|d| (T::one() - two.clone() * d.clone()).abs())
        .collect();
    mean(&gaps)
}

/// The exact step kernel of a tournament: `m = n`, `w[i][j] = 1` iff the
/// edge `i -> j` is present, diagonal zero. Antisymmetry makes every pair
/// sum exactly 0 or 1, so the result is always valid.
pub fn tournament_to_kernel(t: &Tournament) -> StepKernel<BigRational> {
    let n = t.n();
    let mut w = vec![<BigRational as Scalar>::zero(); n * n];
    for i in 0..n {
        for j in t.out_neighbors(i) {
            w[i * n + j] = <BigRational as Scalar>::one();
        }
    }
    StepKernel::from_values_unchecked(n, w)
}

impl StepKernel<f64> {
    /// A random valid float kernel: each off-diagonal pair is drawn
    /// uniformly from the triangle `x, y >= 0`, `x + y <= 1` (by rejection
    /// reflection), each diagonal entry uniformly from `[0, 1/2]`.
    pub fn random_feasible(m: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut w = vec![0.0f64; m * m];
        for i in 0..m {
            w[i * m + i] = 0.5 * unit_f64(rng);
            for j in (i + 1)..m {
                let mut x = unit_f64(rng);
                let mut y = unit_f64(rng);
                if x + y > 1.0 {
                    let (rx, ry) = (1.0 - y, 1.0 - x);
                    x = rx;
                    y = ry;
                }
                w[i * m + j] = x;
                w[j * m + i] = y;
            }
        }
        StepKernel::from_values_unchecked(m, w)
    }
}

/// Uniform f64 in `[0,1)` from the top 53 bits of the stream, independent
/// of any rand-crate float conversion details.
pub(crate) fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
