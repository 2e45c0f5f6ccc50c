//! Exact verification tooling for directed-path extremal problems on
//! tournaments.
//!
//! The crate has four parts:
//!
//! - [`tournament`]: the tournament type, generators (transitive,
//!   rotational, Paley, seeded random), exact degree statistics, and the
//!   `.trn` text format.
//! - [`paths`]: three independent counting engines for directed k-edge
//!   paths and walks, the `n(n/2)^k` / `binom(n, k+1)` bound pair, and
//!   exact bound certificates.
//! - [`kernel`]: step-kernel path densities in exact-rational or float
//!   arithmetic, the contraction trace behind the `2^{-k}` bound, the
//!   regularity diagnostics and deviation-stability certificate, the
//!   `.knl` format, and a projected-gradient density maximizer.
//! - [`census`](mod@census): exhaustive labeled scans for small n with
//!   deterministic extremal witnesses, JSON/CSV records, and
//!   Hamilton/Szele checks.
//!
//! Everything user-facing is exact: counts are big integers, bounds and
//! degree statistics are big rationals, and inequality checks in exact
//! mode never round. Floats appear only in the optimizer and fuzz sweeps.

pub mod census;
pub mod kernel;
pub mod paths;
pub mod tournament;

pub use census::{census, census_all, hamilton_census, CensusOptions, CensusRecord, CensusRun};
pub use kernel::{
    check_stability, maximize_density, maximize_density_multi, parse_knl, tournament_to_kernel,
    AnyKernel, ChainTrace, KernelError, Scalar, StabilityCertificate, StepKernel,
};
pub use paths::{
    bounds, check_path_bounds, count_all_paths, count_paths_dfs, count_paths_subset_dp,
    count_walks, hamilton_path_count, BoundPair, PathBoundCertificate, PathError,
};
pub use tournament::{DegreeStats, Tournament, TournamentError};
