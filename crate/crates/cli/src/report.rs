//! Machine-readable run reports.
//!
//! Every command prints one pretty-printed JSON document to stdout with a
//! fixed field order (struct declaration order below). Counts are decimal
//! strings, rationals are `p/q` strings in lowest terms with positive
//! denominator, floats are strings with 17 significant digits, so every
//! numeric field round-trips through its textual form without loss. Wall
//! time goes to stderr to keep stdout byte-identical across runs.

use serde::Serialize;

/// Render a float with 17 significant digits.
pub fn float_str(x: f64) -> String {
    format!("{:.16e}", x)
}

#[derive(Serialize)]
pub struct CheckDoc {
    pub lower: String,
    pub upper: String,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct CountReport {
    pub command: &'static str,
    pub argv: Vec<String>,
    pub input_sha256: String,
    pub n: usize,
    pub k: usize,
    pub engine: &'static str,
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckDoc>,
}

#[derive(Serialize)]
pub struct TraceStepDoc {
    pub t: usize,
    pub a: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    pub contraction_ok: bool,
}

#[derive(Serialize)]
pub struct TraceDoc {
    pub edge_density: String,
    pub edge_density_ok: bool,
    pub steps: Vec<TraceStepDoc>,
    pub sqrt_a_last: String,
    pub cs_product: String,
    pub cauchy_schwarz_ok: bool,
    pub chain_bound_ok: bool,
    pub density_bound_ok: bool,
}

#[derive(Serialize)]
pub struct KernelReport {
    pub command: &'static str,
    pub argv: Vec<String>,
    pub input_sha256: String,
    pub m: usize,
    pub k: usize,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularity_gap: Option<String>,
    pub pass: bool,
    /// Present only on failure: a violated density inequality means a bug
    /// in this artifact, not a counterexample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Serialize)]
pub struct HamiltonDoc {
    pub min_h: String,
    pub max_h: String,
    pub szele_lower: String,
    pub min_h_positive: bool,
    pub szele_attained: bool,
}

#[derive(Serialize)]
pub struct PerKAssertionDoc {
    pub k: usize,
    pub bounds_ok: bool,
    pub min_is_lower: bool,
}

#[derive(Serialize)]
pub struct CensusAssertionsDoc {
    pub scan_complete: bool,
    pub transitive_minimum: bool,
    pub per_k: Vec<PerKAssertionDoc>,
}

#[derive(Serialize)]
pub struct CensusReport {
    pub command: &'static str,
    pub argv: Vec<String>,
    pub n: usize,
    pub jobs: usize,
    pub records: Vec<tournament_paths::census::CensusRecordDoc>,
    pub hamilton: HamiltonDoc,
    pub assertions: CensusAssertionsDoc,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
}

#[derive(Serialize)]
pub struct StabilityReport {
    pub command: &'static str,
    pub argv: Vec<String>,
    pub input_sha256: String,
    pub n: usize,
    pub k: usize,
    pub epsilon: String,
    pub bound: String,
    pub count: String,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct OptimizeReport {
    pub command: &'static str,
    pub argv: Vec<String>,
    pub m: usize,
    pub k: usize,
    pub iterations: usize,
    pub step_size: String,
    pub starts: usize,
    pub seed: u64,
    pub best_density: String,
    pub target: String,
    pub gap: String,
    pub regularity_gap: String,
    pub density_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_file: Option<String>,
}

pub fn print_report<T: Serialize>(report: &T) {
    let json = serde_json::to_string_pretty(report).expect("report is serializable");
    println!("{json}");
}
