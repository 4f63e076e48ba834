//! Command layer behind the `linchow` binary.
//!
//! Every command returns its output and exit status instead of printing, so
//! the same code drives the binary, the examples and the tests. Exit codes:
//! [`EXIT_PASS`], [`EXIT_MISMATCH`], [`EXIT_DEGENERATE`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::grouphom::{
    group_boundary, psi_tilde, psi_tilde_chain, BasisVector, GroupChain, GroupTuple, NormalizedQuadruple,
};
use crate::projline::{cross_ratio, ProjPoint};
use crate::regulators::{
    boundary_vanishing_check, cocycle_check_b, cr_arguments, discrepancy, json_real, reg_b, reg_g,
    RegulatorReport,
};
use crate::sampling::{
    convert_quadruple, convert_tuple, random_admissible_tuple, random_quadruple, sample_rng, DEFAULT_HEIGHT,
};
use crate::scalar::{format_real, FloatComplex, GaussianRational, Scalar};
use crate::simplicial::CycleChain;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;

/// `D2(i)`, the magnitude of the counterexample's group-side value.
pub const CATALAN: f64 = 0.915_965_594_177_219;

/// Default parameters `(a, b, c, d)` of the counterexample.
pub const COUNTEREXAMPLE: [&str; 4] = ["1", "-1", "1-i", "1+i"];

/// Tolerance names accepted by `--tol` with their defaults.
pub const DEFAULT_TOLERANCES: [(&str, f64); 5] = [
    ("catalan", 1e-9),
    ("cr_float", 1e-9),
    ("reg_g_float", 1e-12),
    ("threshold", 1e-6),
    ("experimental", 1e-8),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Gaussian rationals; floating point only inside D2.
    Exact,
    /// Double-precision complex numbers throughout.
    Float,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub seed: u64,
    pub sample_count: usize,
    tolerances: BTreeMap<String, f64>,
}

impl RunConfig {
    pub fn new(mode: Mode, seed: u64, sample_count: usize) -> Result<Self, String> {
        if sample_count == 0 {
            return Err("--count must be at least 1".into());
        }
        let tolerances = DEFAULT_TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Ok(RunConfig {
            mode,
            seed,
            sample_count,
            tolerances,
        })
    }

    pub fn with_tolerance(mut self, name: &str, value: f64) -> Result<Self, String> {
        if !self.tolerances.contains_key(name) {
            let known: Vec<&str> = DEFAULT_TOLERANCES.iter().map(|(k, _)| *k).collect();
            return Err(format!("unknown tolerance {name:?}; known: {}", known.join(", ")));
        }
        if !(value.is_finite() && value > 0.0) {
            return Err(format!("tolerance {name} must be a positive number"));
        }
        self.tolerances.insert(name.to_string(), value);
        Ok(self)
    }

    /// Applies `name=value` overrides.
    pub fn with_overrides(self, overrides: &[String]) -> Result<Self, String> {
        overrides.iter().try_fold(self, |cfg, item| {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected name=value, got {item:?}"))?;
            let value: f64 = value.trim().parse().map_err(|_| format!("bad tolerance value {value:?}"))?;
            cfg.with_tolerance(name.trim(), value)
        })
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances[name]
    }
}

/// Captured result of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_PASS,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }

    fn degenerate(err: impl std::fmt::Display) -> Self {
        Outcome::failure(EXIT_DEGENERATE, format!("degenerate input: {err}"))
    }
}

#[derive(Parser, Debug)]
#[command(name = "linchow", version, about = "Chain-level regulators for linear cycles on GL_2")]
pub struct Cli {
    /// Arithmetic domain.
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    pub mode: Mode,
    /// Seed for randomized commands.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Number of samples for randomized commands.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Machine-readable JSON output.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// CSV output (scan only; the default there).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Tolerance override `name=value`, repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE", global = true)]
    pub tolerances: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Recompute the n = 2 counterexample and check its values.
    VerifyCounterexample(QuadrupleArgs),
    /// Random quadruples with both regulators and their difference.
    Scan,
    /// Exact chain-map identities plus the experimental boundary checks.
    CheckChainMaps,
    /// Bloch-Wigner dilogarithm of a scalar literal or `inf`.
    D2 { z: String },
    /// Cross-ratio of four points of P¹.
    CrossRatio { x1: String, x2: String, x3: String, x4: String },
    /// Group-side regulator of a tuple (JSON, `@file` or `-`).
    RegB(InputArgs),
    /// Cycle-side regulator of a chain of lines in Δ³.
    RegG { input: String },
    /// Image of a tuple under the cycle map.
    Psi(InputArgs),
    /// Boundary of a group tuple or of a cycle chain.
    Boundary { input: String },
}

#[derive(Args, Debug)]
pub struct QuadrupleArgs {
    #[arg(long, allow_hyphen_values = true, default_value = COUNTEREXAMPLE[0])]
    pub a: String,
    #[arg(long, allow_hyphen_values = true, default_value = COUNTEREXAMPLE[1])]
    pub b: String,
    #[arg(long, allow_hyphen_values = true, default_value = COUNTEREXAMPLE[2])]
    pub c: String,
    #[arg(long, allow_hyphen_values = true, default_value = COUNTEREXAMPLE[3])]
    pub d: String,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// A tuple `[[[…]]…]`, a quadruple `{"a","b","c","d"}`, `@file` or `-`.
    pub input: String,
    /// The vector `v`, comma-separated literals.
    #[arg(long, allow_hyphen_values = true)]
    pub vector: Option<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::failure(EXIT_DEGENERATE, text.trim_end())
            } else {
                Outcome::ok(text)
            };
        }
    };
    dispatch(&cli)
}

fn dispatch(cli: &Cli) -> Outcome {
    let default_count = match cli.command {
        Command::Scan => 100,
        _ => 50,
    };
    let config = match RunConfig::new(cli.mode, cli.seed, cli.count.unwrap_or(default_count))
        .and_then(|c| c.with_overrides(&cli.tolerances))
    {
        Ok(c) => c,
        Err(msg) => return Outcome::failure(EXIT_DEGENERATE, format!("usage error: {msg}")),
    };
    let json = cli.json;
    macro_rules! by_mode {
        ($f:ident($($arg:expr),*)) => {
            match config.mode {
                Mode::Exact => $f::<GaussianRational>($($arg),*),
                Mode::Float => $f::<FloatComplex>($($arg),*),
            }
        };
    }
    match &cli.command {
        Command::VerifyCounterexample(q) => {
            let params = [q.a.as_str(), q.b.as_str(), q.c.as_str(), q.d.as_str()];
            by_mode!(verify_counterexample(params, &config, json))
        }
        Command::Scan => by_mode!(scan(&config, json)),
        Command::CheckChainMaps => by_mode!(check_chain_maps(&config, json)),
        Command::D2 { z } => by_mode!(d2_command(z, json)),
        Command::CrossRatio { x1, x2, x3, x4 } => by_mode!(cross_ratio_command([x1, x2, x3, x4], json)),
        Command::RegB(args) => by_mode!(reg_b_command(args, json)),
        Command::RegG { input } => by_mode!(reg_g_command(input, json)),
        Command::Psi(args) => by_mode!(psi_command(args)),
        Command::Boundary { input } => by_mode!(boundary_command(input)),
    }
}

// ---------------------------------------------------------------------------
// verify-counterexample
// ---------------------------------------------------------------------------

/// A named pass/fail line of a verification.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Report and checks for one quadruple.
#[derive(Clone, Debug)]
pub struct Verification<S> {
    pub report: RegulatorReport<S>,
    pub checks: Vec<Check>,
}

impl<S: Scalar> Verification<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_MISMATCH
        }
    }

    pub fn to_json(&self) -> Value {
        let mut value = self.report.to_json();
        let checks: serde_json::Map<String, Value> =
            self.checks.iter().map(|c| (c.name.to_string(), Value::Bool(c.passed))).collect();
        value["checks"] = Value::Object(checks);
        value["pass"] = Value::Bool(self.passed());
        value
    }

    pub fn to_text(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        let _ = writeln!(out, "mode: {}", if r.exact_mode { "exact" } else { "float" });
        if let Some(q) = &r.quadruple {
            let _ = writeln!(out, "quadruple: a={} b={} c={} d={} delta={}", q.a, q.b, q.c, q.d, q.delta());
        }
        if let Some(args) = &r.cr_arguments {
            let joined: Vec<String> = args.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(out, "cr_arguments: {}", joined.join(", "));
        }
        let _ = writeln!(out, "reg_b: {}", format_real(r.reg_b));
        let _ = writeln!(out, "reg_g: {}", format_real(r.reg_g));
        let _ = writeln!(out, "discrepancy: {}", format_real(r.discrepancy));
        for c in &self.checks {
            let _ = writeln!(out, "check {}: {} ({})", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail);
        }
        let _ = writeln!(out, "result: {}", if self.passed() { "pass" } else { "FAIL" });
        out
    }
}

/// Runs the counterexample checks on `(a, b, c, d)`. Errors are
/// degenerate-input conditions.
pub fn verify_quadruple<S: Scalar>(
    q: &NormalizedQuadruple<S>,
    config: &RunConfig,
) -> Result<Verification<S>, crate::regulators::RegulatorError> {
    let args = cr_arguments(q)?;
    let report = discrepancy(&q.to_tuple(), &BasisVector::first(2))?;
    let one = S::one();
    let cr_ok = if S::EXACT {
        args.iter().all(|a| *a == one)
    } else {
        let tol = config.tolerance("cr_float");
        args.iter().all(|a| (a.clone() - one.clone()).to_complex().abs() <= tol)
    };
    let reg_g_ok = if S::EXACT {
        report.reg_g == 0.0
    } else {
        report.reg_g.abs() <= config.tolerance("reg_g_float")
    };
    let deviation = (report.reg_b.abs() - CATALAN).abs();
    let threshold = config.tolerance("threshold");
    let checks = vec![
        Check {
            name: "cr_arguments_all_one",
            passed: cr_ok,
            detail: if S::EXACT { "exact".into() } else { format!("tol {:e}", config.tolerance("cr_float")) },
        },
        Check {
            name: "reg_g_zero",
            passed: reg_g_ok,
            detail: format!("reg_g = {}", format_real(report.reg_g)),
        },
        Check {
            name: "reg_b_is_catalan",
            passed: deviation <= config.tolerance("catalan"),
            detail: format!("deviation {}", format_real(deviation)),
        },
        Check {
            name: "discrepancy_nonzero",
            passed: report.discrepancy.abs() > threshold,
            detail: format!("|discrepancy| > {threshold:e}"),
        },
    ];
    Ok(Verification { report, checks })
}

pub fn verify_counterexample<S: Scalar>(params: [&str; 4], config: &RunConfig, json: bool) -> Outcome {
    let parsed: Result<Vec<S>, _> = params.iter().map(|p| S::parse_literal(p)).collect();
    let parsed = match parsed {
        Ok(p) => p,
        Err(e) => return Outcome::degenerate(e),
    };
    let [a, b, c, d] = <[S; 4]>::try_from(parsed).expect("four parameters");
    let q = match NormalizedQuadruple::new(a, b, c, d) {
        Ok(q) => q,
        Err(e) => return Outcome::degenerate(e),
    };
    match verify_quadruple(&q, config) {
        Ok(v) => {
            let text = if json { format!("{}\n", v.to_json()) } else { v.to_text() };
            Outcome::with_code(v.exit_code(), text)
        }
        Err(e) => Outcome::degenerate(e),
    }
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub index: u64,
    /// Parameters as literals, absent if no usable draw was found.
    pub params: Option<[String; 4]>,
    pub values: Result<(f64, f64, f64), String>,
}

impl ScanRow {
    pub fn is_degenerate(&self) -> bool {
        self.values.is_err()
    }

    fn csv_line(&self) -> String {
        let params = match &self.params {
            Some(p) => p.join(","),
            None => ",,,".to_string(),
        };
        match &self.values {
            Ok((b, g, d)) => format!(
                "{},{params},{},{},{},ok",
                self.index,
                format_real(*b),
                format_real(*g),
                format_real(*d)
            ),
            Err(_) => format!("{},{params},,,,degenerate", self.index),
        }
    }

    fn to_json(&self) -> Value {
        let mut obj = json!({ "index": self.index });
        if let Some(p) = &self.params {
            for (k, v) in ["a", "b", "c", "d"].iter().zip(p) {
                obj[*k] = Value::String(v.clone());
            }
        }
        match &self.values {
            Ok((b, g, d)) => {
                obj["reg_b"] = json_real(*b);
                obj["reg_g"] = json_real(*g);
                obj["discrepancy"] = json_real(*d);
                obj["status"] = "ok".into();
            }
            Err(reason) => {
                obj["status"] = "degenerate".into();
                obj["reason"] = Value::String(reason.clone());
            }
        }
        obj
    }
}

/// Aggregate over non-degenerate rows.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanSummary {
    pub samples: usize,
    pub nondegenerate: usize,
    pub degenerate: usize,
    pub above_threshold: usize,
    pub threshold: f64,
}

impl ScanSummary {
    pub fn fraction_above(&self) -> f64 {
        if self.nondegenerate == 0 {
            0.0
        } else {
            self.above_threshold as f64 / self.nondegenerate as f64
        }
    }
}

/// One sample: draws a quadruple (redrawing while the closed forms are
/// undefined) and evaluates both regulators on its tuple.
pub fn scan_sample<S: Scalar>(seed: u64, index: u64) -> ScanRow {
    let mut rng = sample_rng(seed, index);
    let Some(q) = random_quadruple(&mut rng, DEFAULT_HEIGHT) else {
        return ScanRow {
            index,
            params: None,
            values: Err("no nondegenerate draw".into()),
        };
    };
    let params = Some([q.a.to_string(), q.b.to_string(), q.c.to_string(), q.d.to_string()]);
    let values = convert_quadruple::<S>(&q)
        .map_err(|e| e.to_string())
        .and_then(|qs| discrepancy(&qs.to_tuple(), &BasisVector::first(2)).map_err(|e| e.to_string()))
        .map(|r| (r.reg_b, r.reg_g, r.discrepancy));
    ScanRow { index, params, values }
}

/// Rows in index order plus the summary; samples run in parallel.
pub fn run_scan<S: Scalar>(config: &RunConfig) -> (Vec<ScanRow>, ScanSummary) {
    let rows: Vec<ScanRow> = (0..config.sample_count as u64)
        .into_par_iter()
        .map(|i| scan_sample::<S>(config.seed, i))
        .collect();
    let threshold = config.tolerance("threshold");
    let nondegenerate = rows.iter().filter(|r| !r.is_degenerate()).count();
    let above_threshold = rows
        .iter()
        .filter(|r| matches!(r.values, Ok((_, _, d)) if d.abs() > threshold))
        .count();
    let summary = ScanSummary {
        samples: rows.len(),
        nondegenerate,
        degenerate: rows.len() - nondegenerate,
        above_threshold,
        threshold,
    };
    (rows, summary)
}

pub const SCAN_HEADER: &str = "index,a,b,c,d,reg_b,reg_g,discrepancy,status";

pub fn scan<S: Scalar>(config: &RunConfig, json: bool) -> Outcome {
    let (rows, summary) = run_scan::<S>(config);
    let mut out = String::new();
    if json {
        let value = json!({
            "mode": config.mode.name(),
            "seed": config.seed,
            "rows": rows.iter().map(ScanRow::to_json).collect::<Vec<_>>(),
            "summary": {
                "samples": summary.samples,
                "nondegenerate": summary.nondegenerate,
                "degenerate": summary.degenerate,
                "threshold": json_real(summary.threshold),
                "fraction_above_threshold": json_real(summary.fraction_above()),
            },
        });
        let _ = writeln!(out, "{value}");
    } else {
        let _ = writeln!(out, "{SCAN_HEADER}");
        for r in &rows {
            let _ = writeln!(out, "{}", r.csv_line());
        }
        let _ = writeln!(
            out,
            "# samples={} nondegenerate={} degenerate={}",
            summary.samples, summary.nondegenerate, summary.degenerate
        );
        let _ = writeln!(
            out,
            "# fraction_above_threshold={} threshold={}",
            format_real(summary.fraction_above()),
            format_real(summary.threshold)
        );
    }
    Outcome::ok(out)
}

// ---------------------------------------------------------------------------
// check-chain-maps
// ---------------------------------------------------------------------------

/// Outcome of one family of identities over all samples.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdentityTally {
    pub checked: usize,
    pub failed: usize,
}

impl IdentityTally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    fn merge(&mut self, other: &IdentityTally) {
        self.checked += other.checked;
        self.failed += other.failed;
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Maximum deviation of an experimental check.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Deviation {
    pub evaluated: usize,
    pub undefined: usize,
    pub within: usize,
    pub max_abs: f64,
}

impl Deviation {
    fn record(&mut self, value: Option<f64>, tol: f64) {
        match value {
            Some(v) => {
                self.evaluated += 1;
                if v.abs() <= tol {
                    self.within += 1;
                }
                self.max_abs = self.max_abs.max(v.abs());
            }
            None => self.undefined += 1,
        }
    }

    fn merge(&mut self, other: &Deviation) {
        self.evaluated += other.evaluated;
        self.undefined += other.undefined;
        self.within += other.within;
        self.max_abs = self.max_abs.max(other.max_abs);
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChainMapSummary {
    pub samples: usize,
    pub skipped: usize,
    pub face_compatibility: IdentityTally,
    pub boundary_commutes_with_psi: IdentityTally,
    pub boundary_squared_cycles: IdentityTally,
    pub boundary_squared_groups: IdentityTally,
    pub cocycle_b: Deviation,
    pub boundary_vanishing: Deviation,
    pub experimental_tolerance: f64,
}

impl ChainMapSummary {
    pub fn exact_checks(&self) -> [(&'static str, &IdentityTally); 4] {
        [
            ("face_compatibility", &self.face_compatibility),
            ("boundary_commutes_with_psi", &self.boundary_commutes_with_psi),
            ("boundary_squared_cycles", &self.boundary_squared_cycles),
            ("boundary_squared_groups", &self.boundary_squared_groups),
        ]
    }

    pub fn exact_passed(&self) -> bool {
        self.exact_checks().iter().all(|(_, t)| t.passed())
    }

    fn merge(&mut self, other: &ChainMapSummary) {
        self.samples += other.samples;
        self.skipped += other.skipped;
        self.face_compatibility.merge(&other.face_compatibility);
        self.boundary_commutes_with_psi.merge(&other.boundary_commutes_with_psi);
        self.boundary_squared_cycles.merge(&other.boundary_squared_cycles);
        self.boundary_squared_groups.merge(&other.boundary_squared_groups);
        self.cocycle_b.merge(&other.cocycle_b);
        self.boundary_vanishing.merge(&other.boundary_vanishing);
    }

    pub fn to_json(&self) -> Value {
        let exact: serde_json::Map<String, Value> = self
            .exact_checks()
            .iter()
            .map(|(name, t)| {
                (name.to_string(), json!({ "checked": t.checked, "failed": t.failed, "pass": t.passed() }))
            })
            .collect();
        let dev = |d: &Deviation| {
            json!({
                "evaluated": d.evaluated,
                "undefined": d.undefined,
                "within_tolerance": d.within,
                "max_abs": json_real(d.max_abs),
            })
        };
        json!({
            "samples": self.samples,
            "skipped": self.skipped,
            "exact": exact,
            "experimental": {
                "tolerance": json_real(self.experimental_tolerance),
                "cocycle_check_b": dev(&self.cocycle_b),
                "boundary_vanishing_check": dev(&self.boundary_vanishing),
            },
            "pass": self.exact_passed(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "samples: {} (skipped {})", self.samples, self.skipped);
        for (name, t) in self.exact_checks() {
            let status = if t.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "exact {name}: {status} ({} checked, {} failed)", t.checked, t.failed);
        }
        for (name, d) in [("cocycle_check_b", &self.cocycle_b), ("boundary_vanishing_check", &self.boundary_vanishing)] {
            let _ = writeln!(
                out,
                "experimental {name}: max |value| = {}, within {}: {}/{}, undefined: {}",
                format_real(d.max_abs),
                format_real(self.experimental_tolerance),
                d.within,
                d.evaluated,
                d.undefined
            );
        }
        let _ = writeln!(out, "result: {}", if self.exact_passed() { "pass" } else { "FAIL" });
        out
    }
}

fn face_compatible(t: &GroupTuple<GaussianRational>, tally: &mut IdentityTally) {
    let v = BasisVector::first(2);
    let Ok(chain) = psi_tilde(t, &v) else {
        tally.record(false);
        return;
    };
    let Some((_, cycle)) = chain.terms().first() else {
        tally.record(false);
        return;
    };
    for i in 0..t.len() {
        let ok = match (cycle.face_restrict(i), psi_tilde(&t.omit(i), &v)) {
            (Ok(Some(face)), Ok(omitted)) => omitted.same_as(&CycleChain::from_cycle(face)),
            (Ok(None), Ok(omitted)) => omitted.is_zero(),
            _ => false,
        };
        tally.record(ok);
    }
}

fn commutes_with_boundary(t: &GroupTuple<GaussianRational>, tally: &mut IdentityTally) {
    let v = BasisVector::first(2);
    let ok = (|| {
        let lhs = psi_tilde(t, &v).ok()?.boundary().ok()?;
        let rhs = psi_tilde_chain(&group_boundary(&GroupChain::from_tuple(t.clone())).ok()?, &v).ok()?;
        Some(lhs.same_as(&rhs))
    })();
    tally.record(ok == Some(true));
}

/// Exact identities and experimental values for sample `index`.
pub fn chain_map_sample<S: Scalar>(seed: u64, index: u64, tol: f64) -> ChainMapSummary {
    let mut s = ChainMapSummary {
        samples: 1,
        experimental_tolerance: tol,
        ..Default::default()
    };
    let mut rng = sample_rng(seed, index);
    let (Some(t4), Some(t5)) = (
        random_admissible_tuple(&mut rng, 4, DEFAULT_HEIGHT),
        random_admissible_tuple(&mut rng, 5, DEFAULT_HEIGHT),
    ) else {
        s.skipped = 1;
        return s;
    };
    let v = BasisVector::first(2);
    face_compatible(&t4, &mut s.face_compatibility);
    face_compatible(&t5, &mut s.face_compatibility);
    commutes_with_boundary(&t4, &mut s.boundary_commutes_with_psi);
    commutes_with_boundary(&t5, &mut s.boundary_commutes_with_psi);

    let cycles_sq = psi_tilde(&t5, &v)
        .ok()
        .and_then(|c| c.boundary().ok())
        .and_then(|c| c.boundary().ok())
        .map(|c| c.is_zero());
    s.boundary_squared_cycles.record(cycles_sq == Some(true));
    let groups_sq = group_boundary(&GroupChain::from_tuple(t5.clone()))
        .and_then(|c| group_boundary(&c))
        .map(|c| c.is_zero());
    s.boundary_squared_groups.record(groups_sq == Ok(true));

    let ts = convert_tuple::<S>(&t5);
    let vs = BasisVector::first(2);
    s.cocycle_b.record(cocycle_check_b(&ts, &vs).ok(), tol);
    s.boundary_vanishing.record(boundary_vanishing_check(&ts, &vs).ok(), tol);
    s
}

pub fn run_chain_maps<S: Scalar>(config: &RunConfig) -> ChainMapSummary {
    let tol = config.tolerance("experimental");
    let parts: Vec<ChainMapSummary> = (0..config.sample_count as u64)
        .into_par_iter()
        .map(|i| chain_map_sample::<S>(config.seed, i, tol))
        .collect();
    let mut total = ChainMapSummary {
        experimental_tolerance: tol,
        ..Default::default()
    };
    for p in &parts {
        total.merge(p);
    }
    total
}

pub fn check_chain_maps<S: Scalar>(config: &RunConfig, json: bool) -> Outcome {
    let summary = run_chain_maps::<S>(config);
    let text = if json { format!("{}\n", summary.to_json()) } else { summary.to_text() };
    let code = if summary.exact_passed() { EXIT_PASS } else { EXIT_MISMATCH };
    Outcome::with_code(code, text)
}

// ---------------------------------------------------------------------------
// thin commands
// ---------------------------------------------------------------------------

/// JSON given inline, as `@path`, or `-` for standard input.
pub fn read_input(input: &str) -> Result<Value, String> {
    let text = if input == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| e.to_string())?
    } else if let Some(path) = input.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    } else {
        input.to_string()
    };
    serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}"))
}

/// A tuple from a list of matrices or from a quadruple object.
pub fn tuple_from_json<S: Scalar>(value: &Value) -> Result<GroupTuple<S>, String> {
    if value.is_array() {
        return GroupTuple::from_json(value).map_err(|e| e.to_string());
    }
    let field = |k: &str| -> Result<S, String> {
        let raw = value.get(k).ok_or_else(|| format!("missing {k:?}"))?;
        let text = raw.as_str().map(str::to_string).unwrap_or_else(|| raw.to_string());
        S::parse_literal(&text).map_err(|e| e.to_string())
    };
    let q = NormalizedQuadruple::new(field("a")?, field("b")?, field("c")?, field("d")?).map_err(|e| e.to_string())?;
    Ok(q.to_tuple())
}

fn parse_vector<S: Scalar>(text: Option<&str>, n: usize) -> Result<BasisVector<S>, String> {
    match text {
        None => Ok(BasisVector::first(n)),
        Some(t) => {
            let parts = t
                .split(',')
                .map(|p| S::parse_literal(p.trim()))
                .collect::<Result<Vec<S>, _>>()
                .map_err(|e| e.to_string())?;
            if parts.len() != n {
                return Err(format!("vector needs {n} components"));
            }
            BasisVector::new(parts).map_err(|e| e.to_string())
        }
    }
}

fn real_output(name: &str, value: f64, json: bool) -> Outcome {
    if json {
        let mut obj = serde_json::Map::new();
        obj.insert(name.to_string(), json_real(value));
        Outcome::ok(format!("{}\n", Value::Object(obj)))
    } else {
        Outcome::ok(format!("{}\n", format_real(value)))
    }
}

pub fn d2_command<S: Scalar>(z: &str, json: bool) -> Outcome {
    match ProjPoint::<S>::parse(z) {
        Ok(p) => real_output("d2", p.d2(), json),
        Err(e) => Outcome::degenerate(e),
    }
}

pub fn cross_ratio_command<S: Scalar>(xs: [&String; 4], json: bool) -> Outcome {
    let points: Result<Vec<ProjPoint<S>>, _> = xs.iter().map(|x| ProjPoint::parse(x)).collect();
    let points = match points {
        Ok(p) => p,
        Err(e) => return Outcome::degenerate(e),
    };
    match cross_ratio(&points[0], &points[1], &points[2], &points[3]) {
        Ok(cr) if json => Outcome::ok(format!(
            "{}\n",
            json!({ "cross_ratio": cr.to_string(), "d2": json_real(cr.d2()) })
        )),
        Ok(cr) => Outcome::ok(format!("{cr}\n")),
        Err(e) => Outcome::degenerate(e),
    }
}

pub fn reg_b_command<S: Scalar>(args: &InputArgs, json: bool) -> Outcome {
    let result = read_input(&args.input).and_then(|v| {
        let t = tuple_from_json::<S>(&v)?;
        let vec = parse_vector(args.vector.as_deref(), t.n())?;
        reg_b(&t, &vec).map_err(|e| e.to_string())
    });
    match result {
        Ok(x) => real_output("reg_b", x, json),
        Err(e) => Outcome::degenerate(e),
    }
}

pub fn reg_g_command<S: Scalar>(input: &str, json: bool) -> Outcome {
    let result = read_input(input).and_then(|v| {
        let chain = CycleChain::<S>::from_json(&v).map_err(|e| e.to_string())?;
        reg_g(&chain).map_err(|e| e.to_string())
    });
    match result {
        Ok(x) => real_output("reg_g", x, json),
        Err(e) => Outcome::degenerate(e),
    }
}

pub fn psi_command<S: Scalar>(args: &InputArgs) -> Outcome {
    let result = read_input(&args.input).and_then(|v| {
        let t = tuple_from_json::<S>(&v)?;
        let vec = parse_vector(args.vector.as_deref(), t.n())?;
        psi_tilde(&t, &vec).map_err(|e| e.to_string())
    });
    match result {
        Ok(chain) => Outcome::ok(format!("{}\n", chain.to_json())),
        Err(e) => Outcome::degenerate(e),
    }
}

/// Group boundary for a list of matrices, cycle boundary for a cycle or chain.
pub fn boundary_command<S: Scalar>(input: &str) -> Outcome {
    let result = read_input(input).and_then(|v| {
        if v.is_array() {
            let t = GroupTuple::<S>::from_json(&v).map_err(|e| e.to_string())?;
            group_boundary(&GroupChain::from_tuple(t))
                .map(|c| c.to_json())
                .map_err(|e| e.to_string())
        } else {
            CycleChain::<S>::from_json(&v)
                .and_then(|c| c.boundary())
                .map(|c| c.to_json())
                .map_err(|e| e.to_string())
        }
    });
    match result {
        Ok(out) => Outcome::ok(format!("{out}\n")),
        Err(e) => Outcome::degenerate(e),
    }
}
