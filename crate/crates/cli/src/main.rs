//! `tpaths`: exact directed-path counts in tournaments, density bounds on
//! step kernels, stability certificates, an extremal census, and a density
//! maximizer, all with machine-readable, reproducible output.
//!
//! Exit codes: 0 all assertions pass; 1 a checked inequality failed;
//! 2 parse/validation error (including bad arguments); 3 requested engine
//! infeasible for the input size.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use tournament_paths::census::{self, CensusOptions};
use tournament_paths::kernel::{
    maximize_density_multi, parse_knl, to_knl_float, AnyKernel, ChainTrace, KernelError, Scalar,
    StepKernel,
};
use tournament_paths::paths::{count_paths_dfs, count_paths_subset_dp, count_walks, PathError};
use tournament_paths::tournament::Tournament;
use tournament_paths::{check_stability, PathBoundCertificate};

use report::*;

const EXIT_ASSERTION: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tpaths",
    version,
    about = "Exact directed-path counts in tournaments, kernel path densities, and extremal census runs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    /// Backtracking DFS over extendable path prefixes.
    Dfs,
    /// Dynamic program over (vertex subset, endpoint); n <= 24.
    SubsetDp,
    /// Walk count 1^T A^k 1 (vertices may repeat).
    Walks,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Transitive,
    Rotational,
    Paley,
    Random,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count directed k-edge paths (or walks) in a .trn file.
    Count {
        file: PathBuf,
        k: usize,
        #[arg(long, value_enum, default_value_t = Engine::Dfs)]
        engine: Engine,
        /// Also emit the exact bound certificate binom(n,k+1) <= count and
        /// count * 2^k <= n^{k+1}; exit 1 if either fails.
        #[arg(long)]
        check: bool,
    },
    /// Write a generated tournament to stdout in .trn format.
    Generate {
        kind: GenKind,
        /// Vertex count (prime q for paley).
        size: u64,
        /// Required for random; all randomness is explicit.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate a .knl kernel: density, proof-chain trace, regularity gap.
    Kernel {
        file: PathBuf,
        k: usize,
        #[arg(long)]
        density: bool,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        regularity_gap: bool,
    },
    /// Exhaustive labeled census for n <= 7; writes JSON/CSV records.
    Census {
        n: usize,
        /// Single k (defaults to all k <= n-1).
        #[arg(long, conflicts_with = "k_all")]
        k: Option<usize>,
        /// Sweep every k <= n-1 (the default behavior, made explicit).
        #[arg(long)]
        k_all: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Directory for per-(n,k) JSON records and a CSV summary.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the n <= 7 guard (hard cap 11) and record-overwrite
        /// protection.
        #[arg(long)]
        force: bool,
    },
    /// Check the indegree-deviation path bound for a .trn file.
    Stability { file: PathBuf, k: usize },
    /// Projected gradient ascent for the k-edge path density over m-block
    /// kernels.
    Optimize {
        m: usize,
        k: usize,
        #[arg(long, default_value_t = 5000)]
        iters: usize,
        #[arg(long, default_value_t = 2.0)]
        step: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        starts: usize,
        /// Write the best kernel as a .knl file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Failure { code: EXIT_VALIDATION, message: message.into() }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INFEASIBLE, message: message.into() }
    }
}

impl From<tournament_paths::TournamentError> for Failure {
    fn from(e: tournament_paths::TournamentError) -> Self {
        Failure::validation(e.to_string())
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        Failure::validation(e.to_string())
    }
}

impl From<PathError> for Failure {
    fn from(e: PathError) -> Self {
        Failure::infeasible(e.to_string())
    }
}

impl From<census::CensusError> for Failure {
    fn from(e: census::CensusError) -> Self {
        match e {
            census::CensusError::TooLarge { .. } => Failure::infeasible(e.to_string()),
            _ => Failure::validation(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(cli.cmd);
    let code = match result {
        Ok(pass) => {
            if pass {
                0
            } else {
                EXIT_ASSERTION
            }
        }
        Err(f) => {
            eprintln!("{}", f.message);
            f.code
        }
    };
    eprintln!("wall_ms={}", started.elapsed().as_millis());
    ExitCode::from(code)
}

fn argv() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn read_input(path: &Path) -> Result<(String, String), Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
    let digest = hex(&Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::validation(format!("{} is not UTF-8", path.display())))?;
    Ok((text, digest))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Ok(pass) drives the 0-vs-1 exit code; Err carries 2 or 3.
fn run(cmd: Cmd) -> Result<bool, Failure> {
    match cmd {
        Cmd::Count { file, k, engine, check } => cmd_count(&file, k, engine, check),
        Cmd::Generate { kind, size, seed } => cmd_generate(kind, size, seed),
        Cmd::Kernel { file, k, density, trace, regularity_gap } => {
            cmd_kernel(&file, k, density, trace, regularity_gap)
        }
        Cmd::Census { n, k, k_all, jobs, out, force } => {
            cmd_census(n, k, k_all, jobs, out.as_deref(), force)
        }
        Cmd::Stability { file, k } => cmd_stability(&file, k),
        Cmd::Optimize { m, k, iters, step, seed, starts, out } => {
            cmd_optimize(m, k, iters, step, seed, starts, out.as_deref())
        }
    }
}

fn cmd_count(file: &Path, k: usize, engine: Engine, check: bool) -> Result<bool, Failure> {
    let (text, digest) = read_input(file)?;
    let t = Tournament::parse_trn(&text)?;
    let (count, engine_name) = match engine {
        Engine::Dfs => (count_paths_dfs(&t, k), "dfs"),
        Engine::SubsetDp => (count_paths_subset_dp(&t, k)?, "subset-dp"),
        Engine::Walks => (count_walks(&t, k), "walks"),
    };
    let cert = check.then(|| PathBoundCertificate::new(t.n(), k, count.clone()));
    let pass = cert.as_ref().is_none_or(|c| c.pass());
    let report = CountReport {
        command: "count",
        argv: argv(),
        input_sha256: digest,
        n: t.n(),
        k,
        engine: engine_name,
        count: count.to_string(),
        check: cert.map(|c| CheckDoc {
            lower: c.bounds.lower.to_string(),
            upper: c.bounds.upper.to_string(),
            lower_ok: c.lower_ok,
            upper_ok: c.upper_ok,
            pass: c.pass(),
        }),
    };
    print_report(&report);
    Ok(pass)
}

fn cmd_generate(kind: GenKind, size: u64, seed: Option<u64>) -> Result<bool, Failure> {
    let t = match kind {
        GenKind::Transitive => Tournament::transitive(size as usize)?,
        GenKind::Rotational => Tournament::rotational(size as usize)?,
        GenKind::Paley => Tournament::paley(size)?,
        GenKind::Random => {
            let seed = seed
                .ok_or_else(|| Failure::validation("random requires an explicit --seed"))?;
            Tournament::random(size as usize, seed)?
        }
    };
    print!("{}", t.to_trn());
    Ok(true)
}

fn cmd_kernel(
    file: &Path,
    k: usize,
    density: bool,
    trace: bool,
    regularity_gap: bool,
) -> Result<bool, Failure> {
    if k == 0 {
        return Err(Failure::validation("kernel evaluation needs k >= 1"));
    }
    let (text, digest) = read_input(file)?;
    // default to the density functional when no mode flag is given
    let want_density = density || (!trace && !regularity_gap);
    match parse_knl(&text)? {
        AnyKernel::Exact(kern) => {
            kernel_report(&kern, k, digest, want_density, trace, regularity_gap, "exact")
        }
        AnyKernel::Float(kern) => {
            kernel_report(&kern, k, digest, want_density, trace, regularity_gap, "float")
        }
    }
}

fn kernel_report<T: Scalar>(
    kern: &StepKernel<T>,
    k: usize,
    digest: String,
    density: bool,
    trace: bool,
    regularity_gap: bool,
    mode: &'static str,
) -> Result<bool, Failure> {
    // the chain trace carries the density and every inequality check
    let chain: ChainTrace<T> = kern.chain_trace(k);
    let pass = chain.pass();
    let report = KernelReport {
        command: "kernel",
        argv: argv(),
        input_sha256: digest,
        m: kern.m(),
        k,
        mode,
        density: density.then(|| chain.density.render()),
        density_bound: density.then(|| T::inv_pow2(k as u32).render()),
        density_ok: density.then_some(chain.density_bound_ok),
        trace: trace.then(|| TraceDoc {
            edge_density: chain.edge_density.render(),
            edge_density_ok: chain.edge_density_ok,
            steps: chain
                .steps
                .iter()
                .map(|s| TraceStepDoc {
                    t: s.t,
                    a: s.a.render(),
                    ratio: s.ratio.as_ref().map(|r| r.render()),
                    contraction_ok: s.contraction_ok,
                })
                .collect(),
            sqrt_a_last: float_str(chain.sqrt_a_last_f64()),
            cs_product: float_str(chain.cs_product_f64()),
            cauchy_schwarz_ok: chain.cauchy_schwarz_ok,
            chain_bound_ok: chain.chain_bound_ok,
            density_bound_ok: chain.density_bound_ok,
        }),
        regularity_gap: regularity_gap.then(|| kern.regularity_gap().render()),
        pass,
        note: (!pass).then_some(
            "a violated density inequality indicates a bug in this artifact, not a counterexample",
        ),
    };
    print_report(&report);
    Ok(pass)
}

fn cmd_census(
    n: usize,
    k: Option<usize>,
    _k_all: bool,
    jobs: usize,
    out: Option<&Path>,
    force: bool,
) -> Result<bool, Failure> {
    if let Some(k) = k {
        if n >= 1 && k >= n {
            return Err(Failure::validation(format!(
                "k={k} out of range for n={n}: paths have at most n-1 edges"
            )));
        }
    }
    let run = census::census_all(n, CensusOptions { jobs, force })?;
    let selected: Vec<&census::CensusRecord> = match k {
        Some(k) => vec![&run.records[k]],
        None => run.records.iter().collect(),
    };

    let scan_complete = run.scan_complete();
    let assertions = CensusAssertionsDoc {
        scan_complete,
        transitive_minimum: run.transitive_min_verified,
        per_k: selected
            .iter()
            .map(|r| PerKAssertionDoc { k: r.k, bounds_ok: r.bounds_ok, min_is_lower: r.min_is_lower })
            .collect(),
    };
    let hamilton = HamiltonDoc {
        min_h: run.hamilton.min_h.to_string(),
        max_h: run.hamilton.max_h.to_string(),
        szele_lower: run.hamilton.szele_lower.to_string(),
        min_h_positive: run.hamilton.min_h_positive(),
        szele_attained: run.hamilton.szele_attained(),
    };
    let pass = scan_complete
        && run.transitive_min_verified
        && selected.iter().all(|r| r.bounds_ok && r.min_is_lower)
        && run.hamilton.min_h_positive()
        && run.hamilton.szele_attained();

    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::validation(format!("cannot create {}: {e}", dir.display())))?;
        for rec in &selected {
            let path = dir.join(format!("census_n{}_k{}.json", rec.n, rec.k));
            write_record(&path, &rec.to_json(), force)?;
        }
        let csv_path = dir.join(format!("census_n{n}.csv"));
        let mut csv = String::from(census::CensusRecord::csv_header());
        csv.push('\n');
        for rec in &selected {
            csv.push_str(&rec.to_csv_row());
            csv.push('\n');
        }
        write_record(&csv_path, &csv, force)?;
    }

    let report = CensusReport {
        command: "census",
        argv: argv(),
        n,
        jobs,
        records: selected.iter().map(|r| r.doc()).collect(),
        hamilton,
        assertions,
        pass,
        out_dir: out.map(|p| p.display().to_string()),
    };
    print_report(&report);
    Ok(pass)
}

/// Census outputs are certificates: an existing record may only be
/// overwritten by identical bytes unless forced.
fn write_record(path: &Path, contents: &str, force: bool) -> Result<(), Failure> {
    if !force {
        if let Ok(existing) = fs::read_to_string(path) {
            if existing != contents {
                return Err(Failure {
                    code: EXIT_ASSERTION,
                    message: format!(
                        "{} already exists with different contents; rerun with --force to overwrite",
                        path.display()
                    ),
                });
            }
        }
    }
    fs::write(path, contents)
        .map_err(|e| Failure::validation(format!("cannot write {}: {e}", path.display())))
}

fn cmd_stability(file: &Path, k: usize) -> Result<bool, Failure> {
    let (text, digest) = read_input(file)?;
    let t = Tournament::parse_trn(&text)?;
    let cert = check_stability(&t, k);
    let report = StabilityReport {
        command: "stability",
        argv: argv(),
        input_sha256: digest,
        n: cert.n,
        k: cert.k,
        epsilon: cert.epsilon.to_string(),
        bound: cert.bound.to_string(),
        count: cert.count.to_string(),
        pass: cert.pass,
    };
    print_report(&report);
    Ok(cert.pass)
}

fn cmd_optimize(
    m: usize,
    k: usize,
    iters: usize,
    step: f64,
    seed: u64,
    starts: usize,
    out: Option<&Path>,
) -> Result<bool, Failure> {
    if m == 0 {
        return Err(Failure::validation("need at least one block"));
    }
    if k == 0 {
        return Err(Failure::validation("density maximization needs k >= 1"));
    }
    let outcome = maximize_density_multi(m, k, iters, step, seed, starts)?;
    let target = 2f64.powi(-(k as i32));
    let density_ok = outcome.density <= target + 1e-9;
    if let Some(path) = out {
        fs::write(path, to_knl_float(&outcome.kernel))
            .map_err(|e| Failure::validation(format!("cannot write {}: {e}", path.display())))?;
    }
    let report = OptimizeReport {
        command: "optimize",
        argv: argv(),
        m,
        k,
        iterations: iters,
        step_size: float_str(step),
        starts,
        seed,
        best_density: float_str(outcome.density),
        target: float_str(target),
        gap: float_str(outcome.gap),
        regularity_gap: float_str(outcome.kernel.regularity_gap()),
        density_ok,
        kernel_file: out.map(|p| p.display().to_string()),
    };
    print_report(&report);
    Ok(density_ok)
}
