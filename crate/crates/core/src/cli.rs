//! Experiment runner behind the `uvi` binary: JSON configs in, CSV traces and
//! JSON summaries out, plus the verification suites.
//!
//! A config looks like
//!
//! ```json
//! {
//!   "problem": { "name": "l1-ball", "params": { "x0": [2.0, 0.0], "radius": 1.0 } },
//!   "mode": { "type": "universal" },
//!   "T": 2000,
//!   "g0": 1.0,
//!   "noise": { "bound": 0.5 },
//!   "seeds": [0, 1, 2],
//!   "eval_every": 100,
//!   "record_every": 1,
//!   "output_dir": "out/l1"
//! }
//! ```
//!
//! Only `problem` and `T` are required. `mode` may also be
//! `{ "type": "fixed-step", "eta": 0.1 }`. `record_every` defaults to 1 and
//! `eval_every` to `T/10` (at least 1). `UVI_OUTPUT_DIR` overrides
//! `output_dir`.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::{
    adapter_checks, lemma_suite, rate_fit, regret_bound_check, solver_invariant_checks, theorem_bounds, BoundContext,
    BoundReport, CheckOutcome, RateFit,
};
use crate::error::{Error, Result};
use crate::gap::{dual_gap, gap_series};
use crate::operators::{builtin_problems, StochasticOracle, VIProblem};
use crate::solver::{universal_mirror_prox, OracleMode, RunDiagnostics, RunTrace, SolverConfig, StepMode};

pub const OUTPUT_DIR_ENV: &str = "UVI_OUTPUT_DIR";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    #[serde(default)]
    pub params: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    /// Almost-sure bound on `‖F̃(x) − F(x)‖*`.
    pub bound: f64,
    /// Informational; must not exceed `bound²`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_sq: Option<f64>,
}

fn default_mode() -> StepMode {
    StepMode::Universal
}
fn default_g0() -> f64 {
    1.0
}
fn default_seeds() -> Vec<u64> {
    vec![0]
}
fn default_output_dir() -> PathBuf {
    PathBuf::from("uvi-out")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemSpec,
    #[serde(default = "default_mode")]
    pub mode: StepMode,
    #[serde(rename = "T")]
    pub iterations: usize,
    #[serde(default = "default_g0")]
    pub g0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSpec>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval_every: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record_every: Option<usize>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad config: {e}")))
    }

    pub fn record_every(&self) -> usize {
        self.record_every.unwrap_or(1)
    }

    pub fn eval_every(&self) -> usize {
        self.eval_every.unwrap_or((self.iterations / 10).max(1))
    }

    /// `output_dir`, unless the environment overrides it.
    pub fn resolved_output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.output_dir.clone(),
        }
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig { iterations: self.iterations, g0: self.g0, mode: self.mode, record_every: self.record_every() }
    }

    /// Checks the config against the catalog and returns the built problem.
    pub fn validate(&self) -> Result<VIProblem> {
        let problem = builtin_problems().build(&self.problem.name, &self.problem.params)?;
        self.solver_config().validate()?;
        if self.seeds.is_empty() {
            return Err(Error::Config("seeds must not be empty".into()));
        }
        let (eval, record) = (self.eval_every(), self.record_every());
        if eval == 0 || eval % record != 0 {
            return Err(Error::Config(format!(
                "eval_every ({eval}) must be a positive multiple of record_every ({record})"
            )));
        }
        if let Some(noise) = &self.noise {
            if !(noise.bound.is_finite() && noise.bound >= 0.0) {
                return Err(Error::Config(format!("noise bound must be nonnegative, got {}", noise.bound)));
            }
            if let Some(s) = noise.sigma_sq {
                if !(s >= 0.0 && s <= noise.bound * noise.bound * (1.0 + 1e-12)) {
                    return Err(Error::Config(format!(
                        "sigma_sq {s} is incompatible with noise bound {}",
                        noise.bound
                    )));
                }
            }
        }
        Ok(problem)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedSummary {
    pub seed: u64,
    pub final_gap: f64,
    pub z_sq_total: f64,
    pub final_eta: f64,
    pub diagnostics: RunDiagnostics,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub config: ExperimentConfig,
    pub runs: Vec<SeedSummary>,
    pub mean_gap: f64,
    pub bounds: BoundReport,
}

/// Runs every seed and returns the traces in seed order.
fn run_seeds(config: &ExperimentConfig, problem: &VIProblem) -> Result<Vec<RunTrace>> {
    let solver = config.solver_config();
    config
        .seeds
        .par_iter()
        .map(|&seed| match &config.noise {
            None => universal_mirror_prox(problem, OracleMode::Exact, &solver),
            Some(noise) => {
                let mut oracle = StochasticOracle::new(problem.clone(), noise.bound, seed)?;
                universal_mirror_prox(problem, OracleMode::Stochastic(&mut oracle), &solver)
            }
        })
        .collect()
}

fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// `t, eta, z_sq, gap` for every recorded step; `gap` is empty off-schedule.
fn write_trace_csv(path: &Path, problem: &VIProblem, trace: &RunTrace, eval_every: usize) -> Result<()> {
    let gaps = gap_series(problem, trace, eval_every)?;
    let mut gaps = gaps.iter().peekable();
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "eta", "z_sq", "gap"])?;
    for r in &trace.records {
        let gap = match gaps.peek() {
            Some(g) if g.t == r.t => fmt_num(gaps.next().expect("peeked").gap),
            _ => String::new(),
        };
        w.write_record([r.t.to_string(), fmt_num(r.eta), fmt_num(r.z_sq), gap])?;
    }
    w.flush()?;
    Ok(())
}

/// One run per seed into `dir`; writes `trace_<seed>.csv` and `summary.json`.
pub fn run_into(config: &ExperimentConfig, dir: &Path) -> Result<RunSummary> {
    let problem = config.validate()?;
    let traces = run_seeds(config, &problem)?;
    fs::create_dir_all(dir)?;

    let eval_every = config.eval_every();
    let mut runs = Vec::with_capacity(traces.len());
    for (seed, trace) in config.seeds.iter().zip(&traces) {
        write_trace_csv(&dir.join(format!("trace_{seed}.csv")), &problem, trace, eval_every)?;
        runs.push(SeedSummary {
            seed: *seed,
            final_gap: dual_gap(&problem, &trace.average)?,
            z_sq_total: trace.z_sq_total,
            final_eta: trace.final_record().eta,
            diagnostics: trace.diagnostics.clone(),
        });
    }
    let mean_gap = runs.iter().map(|r| r.final_gap).sum::<f64>() / runs.len() as f64;

    let mut ctx = BoundContext::for_problem(&problem, config.g0);
    if let Some(noise) = &config.noise {
        ctx = ctx.with_noise(noise.bound);
    }
    let mut bounds = theorem_bounds(&ctx, config.iterations);
    bounds.observed_gap = Some(mean_gap);
    if traces[0].is_complete() {
        let check = regret_bound_check(&problem, &traces[0], config.iterations)?;
        bounds.lemma3_lhs = Some(check.lhs);
        bounds.lemma3_rhs = Some(check.rhs);
    }

    let summary = RunSummary { config: config.clone(), runs, mean_gap, bounds };
    fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(summary)
}

pub fn cmd_run(config_path: &Path) -> Result<RunSummary> {
    let config = ExperimentConfig::from_path(config_path)?;
    let dir = config.resolved_output_dir();
    run_into(&config, &dir)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    #[serde(rename = "T")]
    pub iterations: usize,
    pub mean_gap: f64,
    pub directory: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub points: Vec<SweepPoint>,
    /// Absent when fewer than three positive gaps are available.
    pub rate_fit: Option<RateFit>,
}

/// `cmd_run` for each `T` into `<output_dir>/T_<T>/`, then a log-log fit of
/// mean gap against `T` written to `<output_dir>/summary.json`.
pub fn cmd_sweep(config_path: &Path, t_list: &[usize]) -> Result<SweepSummary> {
    let base = ExperimentConfig::from_path(config_path)?;
    sweep(&base, t_list)
}

pub fn sweep(base: &ExperimentConfig, t_list: &[usize]) -> Result<SweepSummary> {
    if t_list.is_empty() {
        return Err(Error::Config("empty T list".into()));
    }
    let root = base.resolved_output_dir();
    let mut points = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let mut config = base.clone();
        config.iterations = t;
        let dir = root.join(format!("T_{t}"));
        let summary = run_into(&config, &dir)?;
        points.push(SweepPoint { iterations: t, mean_gap: summary.mean_gap, directory: dir });
    }
    let pairs: Vec<(f64, f64)> = points.iter().map(|p| (p.iterations as f64, p.mean_gap)).collect();
    let summary = SweepSummary { points, rate_fit: rate_fit(&pairs).ok() };
    fs::write(root.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(summary)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Invariants,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "invariants" => Ok(Suite::Invariants),
            "all" => Ok(Suite::All),
            other => Err(Error::Config(format!("unknown suite `{other}` (expected lemmas, invariants or all)"))),
        }
    }
}

const VERIFY_INSTANCES: usize = 1000;
const INVARIANT_RUN_LENGTH: usize = 500;
const INVARIANT_NOISE: f64 = 0.5;

/// Adapter checks and solver invariants over every catalog default, with
/// exact and noisy oracles and a mismatched `G₀`.
pub fn invariant_suite(seed: u64) -> Result<Vec<CheckOutcome>> {
    let catalog = builtin_problems();
    let per_problem: Vec<Result<Vec<CheckOutcome>>> = catalog
        .defaults()
        .par_iter()
        .map(|p| {
            let mut rows = adapter_checks(p, VERIFY_INSTANCES, seed)?;
            for g0 in [1.0, p.g_bound().max(1e-3) * 10.0] {
                let cfg = SolverConfig::universal(INVARIANT_RUN_LENGTH).with_g0(g0);
                let exact = universal_mirror_prox(p, OracleMode::Exact, &cfg)?;
                rows.extend(solver_invariant_checks(p, &exact, p.g_bound()));
                let mut oracle = StochasticOracle::new(p.clone(), INVARIANT_NOISE, seed)?;
                let g = oracle.g_bound();
                let noisy = universal_mirror_prox(p, OracleMode::Stochastic(&mut oracle), &cfg)?;
                for mut row in solver_invariant_checks(p, &noisy, g) {
                    row.name.push_str(" (noisy)");
                    rows.push(row);
                }
            }
            Ok(rows)
        })
        .collect();
    let mut out = Vec::new();
    for rows in per_problem {
        out.extend(rows?);
    }
    Ok(merge_rows(out))
}

/// Folds rows with equal names, keeping the first counterexample.
fn merge_rows(rows: Vec<CheckOutcome>) -> Vec<CheckOutcome> {
    let mut out: Vec<CheckOutcome> = Vec::new();
    for row in rows {
        match out.iter_mut().find(|r| r.name == row.name) {
            Some(r) => {
                r.instances += row.instances;
                r.failures += row.failures;
                if r.counterexample.is_none() {
                    r.counterexample = row.counterexample;
                }
            }
            None => out.push(row),
        }
    }
    out
}

pub fn cmd_verify(suite: Suite, seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut rows = Vec::new();
    if matches!(suite, Suite::Lemmas | Suite::All) {
        rows.extend(lemma_suite(seed, VERIFY_INSTANCES)?);
    }
    if matches!(suite, Suite::Invariants | Suite::All) {
        rows.extend(invariant_suite(seed)?);
    }
    Ok(rows)
}

/// Renders a pass/fail table, counterexamples indented under failing rows.
pub fn format_table(rows: &[CheckOutcome]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status}  {:<width$}  {}/{} ok\n", r.name, r.instances - r.failures, r.instances));
        if let Some(c) = &r.counterexample {
            out.push_str(&format!("      counterexample: {c}\n"));
        }
    }
    out
}

/// Process exit code for an error: 2 for bad input, 3 for a numeric abort.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnknownProblem(_) | Error::Config(_) | Error::InvalidParameter(_) | Error::Json(_) => 2,
        Error::NumericAbort { .. } => 3,
        _ => 1,
    }
}
