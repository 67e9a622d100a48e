//! Duality gaps of averaged iterates, and the linear regret of a run.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, KahanSum};
use crate::operators::{bilinear_dual_gap, DualGapRule, ReferenceMinimum, VIProblem};
use crate::solver::{MirrorProx, OracleMode, RunTrace, StepMode};

const MEMBERSHIP_TOL: f64 = 1e-9;
const INNER_ITERATIONS: usize = 100_000;

/// A gap value with an upper bound on its evaluation error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapEstimate {
    pub value: f64,
    pub tolerance: f64,
}

/// `DualGap(x) = max_{y∈K} Δ(x, y)`.
pub fn dual_gap(problem: &VIProblem, x: &[f64]) -> Result<f64> {
    Ok(dual_gap_estimate(problem, x)?.value)
}

/// Like [`dual_gap`] but also reports how exact the value is. Closed forms
/// have zero tolerance; a cached inner solve reports its certified slack.
pub fn dual_gap_estimate(problem: &VIProblem, x: &[f64]) -> Result<GapEstimate> {
    crate::error::check_dim(problem.dim(), x.len())?;
    if !problem.geometry().contains(x, MEMBERSHIP_TOL) {
        return Err(Error::Infeasible("gap evaluated outside K".into()));
    }
    match problem.dual_gap_rule() {
        DualGapRule::Bilinear(a) => Ok(GapEstimate { value: bilinear_dual_gap(a, x), tolerance: 0.0 }),
        DualGapRule::ConvexMin { objective, minimum } => {
            let reference = match minimum.get() {
                Some(m) => *m,
                None => {
                    let solved = inner_minimum(problem, objective.as_ref())?;
                    *minimum.get_or_init(|| solved)
                }
            };
            Ok(GapEstimate { value: objective(x) - reference.value, tolerance: reference.tolerance })
        }
        DualGapRule::Custom(f) => Ok(GapEstimate { value: f(x), tolerance: 0.0 }),
        DualGapRule::None => Err(Error::NoGapEvaluator(problem.name().to_string())),
    }
}

/// Long universal run on the problem itself. The value is the best `f` seen;
/// the tolerance comes from the linearisation lower bound
/// `f(x_t) + min_K g_t·(· − x_t) <= min_K f`, valid for any convex `f`.
fn inner_minimum(problem: &VIProblem, f: &(dyn Fn(&[f64]) -> f64 + Send + Sync)) -> Result<ReferenceMinimum> {
    let geom = problem.geometry();
    let g0 = problem.g_bound().max(f64::MIN_POSITIVE);
    let mut driver = MirrorProx::new(problem, OracleMode::Exact, StepMode::Universal, g0)?;
    let mut best = f(driver.anchor());
    let mut lower = f64::NEG_INFINITY;
    for _ in 0..INNER_ITERATIONS {
        let s = driver.step()?;
        let fx = f(&s.x);
        best = best.min(fx).min(f(&s.y));
        lower = lower.max(fx + geom.linear_min_value(&s.loss)? - dot(&s.loss, &s.x));
    }
    Ok(ReferenceMinimum { value: best, tolerance: (best - lower).max(0.0) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapPoint {
    pub t: usize,
    pub gap: f64,
}

/// `DualGap(x̄_t)` at every multiple of `eval_every` plus the final step,
/// with `x̄_t` rebuilt from the recorded prefix sums.
pub fn gap_series(problem: &VIProblem, trace: &RunTrace, eval_every: usize) -> Result<Vec<GapPoint>> {
    if eval_every == 0 {
        return Err(Error::InvalidParameter("eval_every must be at least 1".into()));
    }
    let mut ts: Vec<usize> = (eval_every..=trace.iterations).step_by(eval_every).collect();
    if ts.last() != Some(&trace.iterations) {
        ts.push(trace.iterations);
    }
    ts.into_iter()
        .map(|t| {
            let record = trace.record_at(t).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "step {t} was not recorded (record_every = {}); use an eval_every that is a multiple of it",
                    trace.record_every
                ))
            })?;
            Ok(GapPoint { t, gap: dual_gap(problem, &record.running_average())? })
        })
        .collect()
}

/// `Σ_{t<=n} g_t·x_t − min_{x∈K} Σ_{t<=n} g_t·x` over the first `n` steps.
pub fn regret_prefix(trace: &RunTrace, problem: &VIProblem, n: usize) -> Result<f64> {
    if !trace.is_complete() {
        return Err(Error::ThinnedTrace(trace.record_every));
    }
    if n == 0 || n > trace.iterations {
        return Err(Error::InvalidParameter(format!("prefix {n} outside 1..={}", trace.iterations)));
    }
    let mut played = 0.0;
    let mut losses = KahanSum::new(problem.dim());
    for r in &trace.records[..n] {
        played += dot(&r.loss, &r.x);
        losses.add(&r.loss);
    }
    Ok(played - problem.geometry().linear_min_value(losses.sum())?)
}

/// Regret of the whole run against the observed losses `g_t`.
pub fn regret(trace: &RunTrace, problem: &VIProblem) -> Result<f64> {
    regret_prefix(trace, problem, trace.iterations)
}
