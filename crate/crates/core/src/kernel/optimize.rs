//! Projected gradient ascent for the path density over float kernels.
//!
//! The search runs on the tournament-limit boundary `w + w^T = 1`
//! off-diagonal: kernels are parametrized as `w = 1/2 + s` with `s`
//! antisymmetric and entrywise clamped to `[-1/2, 1/2]`, diagonal pinned at
//! 1/2. Path density is monotone nondecreasing in every entry, so maxima
//! lie on this boundary. Constant step size, best-iterate tracking.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{unit_f64, KernelError, StepKernel};

/// Result of one optimization run: the best kernel visited, its density,
/// and the gap `2^{-k} - density` to the known optimum.
#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub kernel: StepKernel<f64>,
    pub density: f64,
    pub gap: f64,
    pub iterations: usize,
    pub starts: usize,
}

/// Analytic gradient of the k-edge path density with respect to every
/// kernel entry, row-major. With forward vectors `g_t` and backward
/// vectors `h_r` (the same recursion on the reversed kernel),
/// `d density / d w[a][b] = (1/m^2) * sum_{t=0}^{k-1} g_t[a] * h_{k-1-t}[b]`.
pub fn path_density_gradient(kern: &StepKernel<f64>, k: usize) -> Vec<f64> {
    assert!(k >= 1);
    let m = kern.m();
    let inv_m = 1.0 / m as f64;
    let w = kern.values();

    // forward: g_0..g_{k-1}
    let mut forward = Vec::with_capacity(k);
    forward.push(vec![1.0f64; m]);
    for t in 1..k {
        let prev = &forward[t - 1];
        let mut g = vec![0.0f64; m];
        for (j, gj) in g.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (i, p) in prev.iter().enumerate() {
                acc += p * w[i * m + j];
            }
            *gj = acc * inv_m;
        }
        forward.push(g);
    }
    // backward: h_0..h_{k-1}, h_r[x] = (1/m) sum_y w[x][y] h_{r-1}[y]
    let mut backward = Vec::with_capacity(k);
    backward.push(vec![1.0f64; m]);
    for r in 1..k {
        let prev = &backward[r - 1];
        let mut h = vec![0.0f64; m];
        for (x, hx) in h.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (y, p) in prev.iter().enumerate() {
                acc += w[x * m + y] * p;
            }
            *hx = acc * inv_m;
        }
        backward.push(h);
    }

    let inv_m2 = inv_m * inv_m;
    let mut grad = vec![0.0f64; m * m];
    for t in 0..k {
        let g = &forward[t];
        let h = &backward[k - 1 - t];
        for a in 0..m {
            if g[a] == 0.0 {
                continue;
            }
            let row = &mut grad[a * m..(a + 1) * m];
            for (b, slot) in row.iter_mut().enumerate() {
                *slot += g[a] * h[b];
            }
        }
    }
    for v in grad.iter_mut() {
        *v *= inv_m2;
    }
    grad
}

/// Single-start projected gradient ascent; deterministic in
/// `(m, k, iterations, step_size, seed)`.
pub fn maximize_density(
    m: usize,
    k: usize,
    iterations: usize,
    step_size: f64,
    seed: u64,
) -> Result<OptimizeOutcome, KernelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_one(m, k, iterations, step_size, &mut rng).map(|(kernel, density)| {
        let gap = 2f64.powi(-(k as i32)) - density;
        OptimizeOutcome { kernel, density, gap, iterations, starts: 1 }
    })
}

/// Multi-start variant: per-start RNG streams derived from one seed, best
/// density across starts (earliest start wins ties).
pub fn maximize_density_multi(
    m: usize,
    k: usize,
    iterations: usize,
    step_size: f64,
    seed: u64,
    starts: usize,
) -> Result<OptimizeOutcome, KernelError> {
    if starts == 0 {
        return Err(KernelError::BadStarts);
    }
    let mut best: Option<(StepKernel<f64>, f64)> = None;
    for start in 0..starts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(start as u64);
        let (kernel, density) = run_one(m, k, iterations, step_size, &mut rng)?;
        if best.as_ref().is_none_or(|(_, d)| density > *d) {
            best = Some((kernel, density));
        }
    }
    let (kernel, density) = best.unwrap();
    let gap = 2f64.powi(-(k as i32)) - density;
    Ok(OptimizeOutcome { kernel, density, gap, iterations, starts })
}

fn run_one(
    m: usize,
    k: usize,
    iterations: usize,
    step_size: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(StepKernel<f64>, f64), KernelError> {
    if m == 0 {
        return Err(KernelError::Empty);
    }
    assert!(k >= 1, "density maximization needs k >= 1");
    if !(step_size.is_finite() && step_size > 0.0) {
        return Err(KernelError::BadStepSize);
    }
    if iterations == 0 {
        return Err(KernelError::BadIterations);
    }

    // antisymmetric part, full matrix with s[j][i] = -s[i][j], zero diagonal
    let mut s = vec![0.0f64; m * m];
    for i in 0..m {
        for j in (i + 1)..m {
            let v = unit_f64(rng) - 0.5;
            s[i * m + j] = v;
            s[j * m + i] = -v;
        }
    }

    let kernel_of = |s: &[f64]| {
        let mut w = vec![0.5f64; m * m];
        for (slot, sv) in w.iter_mut().zip(s.iter()) {
            *slot += sv;
        }
        StepKernel::from_values_unchecked(m, w)
    };

    let mut best_kernel = kernel_of(&s);
    let mut best_density = best_kernel.path_density(k);
    for _ in 0..iterations {
        let kern = kernel_of(&s);
        let grad = path_density_gradient(&kern, k);
        for i in 0..m {
            for j in (i + 1)..m {
                let d = grad[i * m + j] - grad[j * m + i];
                let v = (s[i * m + j] + step_size * d).clamp(-0.5, 0.5);
                s[i * m + j] = v;
                s[j * m + i] = -v;
            }
        }
        let kern = kernel_of(&s);
        let density = kern.path_density(k);
        if density > best_density {
            best_density = density;
            best_kernel = kern;
        }
    }
    Ok((best_kernel, best_density))
}
