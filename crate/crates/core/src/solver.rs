//! Universal Mirror-Prox and its fixed-step baseline.
//!
//! Each iteration is an optimistic mirror step anchored at `y_{t−1}`:
//!
//! ```text
//! M_t = F(y_{t−1})        x_t = argmin_K M_t·x + D_R(x, y_{t−1}) / η_t
//! g_t = F(x_t)            y_t = argmin_K g_t·x + D_R(x, y_{t−1}) / η_t
//! ```
//!
//! and the universal step size is `η_t = D / sqrt(G₀² + Σ_{τ<t} Z_τ²)` with
//! `Z_τ² = (‖x_τ − y_τ‖² + ‖x_τ − y_{τ−1}‖²) / (5η_τ²)`, norms being the
//! geometry's primal norm. The output is the uniform average of the `x_t`.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::{all_finite, sub, KahanSum};
use crate::operators::{StochasticOracle, VIProblem};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum StepMode {
    Universal,
    FixedStep { eta: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub iterations: usize,
    /// The constant `G₀` of the step-size rule.
    pub g0: f64,
    pub mode: StepMode,
    /// Keep every `record_every`-th step (and always the last one).
    pub record_every: usize,
}

impl SolverConfig {
    pub fn universal(iterations: usize) -> Self {
        Self { iterations, g0: 1.0, mode: StepMode::Universal, record_every: 1 }
    }

    pub fn fixed_step(iterations: usize, eta: f64) -> Self {
        Self { iterations, g0: 1.0, mode: StepMode::FixedStep { eta }, record_every: 1 }
    }

    pub fn with_g0(mut self, g0: f64) -> Self {
        self.g0 = g0;
        self
    }

    pub fn with_record_every(mut self, record_every: usize) -> Self {
        self.record_every = record_every;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidParameter("iterations must be at least 1".into()));
        }
        if !(self.g0.is_finite() && self.g0 > 0.0) {
            return Err(Error::InvalidParameter(format!("g0 must be positive, got {}", self.g0)));
        }
        if let StepMode::FixedStep { eta } = self.mode {
            if !(eta.is_finite() && eta > 0.0) {
                return Err(Error::InvalidParameter(format!("fixed step size must be positive, got {eta}")));
            }
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParameter("record_every must be at least 1".into()));
        }
        Ok(())
    }
}

/// Where the solver gets its operator values from.
pub enum OracleMode<'a> {
    Exact,
    /// Fresh noisy draws for both `M_t` and `g_t`.
    Stochastic(&'a mut StochasticOracle),
}

/// Everything produced by one iteration `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepState {
    pub t: usize,
    pub y_prev: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub hint: Vec<f64>,
    pub loss: Vec<f64>,
    pub eta: f64,
    pub z_sq: f64,
    /// `Σ_{τ<t} Z_τ²`, the accumulator `η_t` was computed from.
    pub z_sq_accum: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub t: usize,
    pub eta: f64,
    pub z_sq: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub hint: Vec<f64>,
    pub loss: Vec<f64>,
    /// Compensated prefix sum `Σ_{τ<=t} x_τ`.
    pub x_sum: Vec<f64>,
}

impl StepRecord {
    /// Running average `x̄_t`.
    pub fn running_average(&self) -> Vec<f64> {
        let n = self.t as f64;
        self.x_sum.iter().map(|s| s / n).collect()
    }
}

/// Per-run maxima, tracked at every step regardless of trace thinning.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunDiagnostics {
    /// `max_t ‖x_t − y_{t−1}‖ / η_t`.
    pub max_x_ratio: f64,
    /// `max_t ‖y_t − y_{t−1}‖ / η_t`.
    pub max_y_ratio: f64,
    pub max_z_sq: f64,
    /// `max_t max(‖M_t‖*, ‖g_t‖*)`.
    pub max_oracle_norm: f64,
    pub eta_non_increasing: bool,
}

#[derive(Clone, Debug)]
pub struct RunTrace {
    pub y0: Vec<f64>,
    pub records: Vec<StepRecord>,
    /// `x̄_T`.
    pub average: Vec<f64>,
    pub iterations: usize,
    pub record_every: usize,
    /// `Σ_{t<=T} Z_t²`.
    pub z_sq_total: f64,
    pub diagnostics: RunDiagnostics,
    pub duration: Duration,
}

impl RunTrace {
    pub fn is_complete(&self) -> bool {
        self.records.len() == self.iterations
    }

    pub fn final_record(&self) -> &StepRecord {
        self.records.last().expect("a trace has at least one record")
    }

    pub fn record_at(&self, t: usize) -> Option<&StepRecord> {
        self.records.binary_search_by_key(&t, |r| r.t).ok().map(|i| &self.records[i])
    }
}

/// One optimistic step with both vectors known up front:
/// `x = prox(y_prev, hint)`, `y = prox(y_prev, loss)`.
pub fn optimistic_step(
    geom: &Geometry,
    y_prev: &[f64],
    hint: &[f64],
    loss: &[f64],
    eta: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    Ok((geom.prox_step(y_prev, hint, eta)?, geom.prox_step(y_prev, loss, eta)?))
}

/// `η_t = D / sqrt(G₀² + Σ_{τ<t} Z_τ²)`.
pub fn update_eta(z_sq_accum: f64, diameter: f64, g0: f64) -> f64 {
    diameter / (g0 * g0 + z_sq_accum).sqrt()
}

/// `Z_t² = (‖x_t − y_t‖² + ‖x_t − y_{t−1}‖²) / (5η_t²)`.
pub fn compute_z_sq(geom: &Geometry, x: &[f64], y: &[f64], y_prev: &[f64], eta: f64) -> Result<f64> {
    let a = geom.primal_norm(&sub(x, y))?;
    let b = geom.primal_norm(&sub(x, y_prev))?;
    Ok((a * a + b * b) / (5.0 * eta * eta))
}

/// Step-by-step driver; [`universal_mirror_prox`] runs it to completion.
pub struct MirrorProx<'a> {
    problem: &'a VIProblem,
    oracle: OracleMode<'a>,
    mode: StepMode,
    g0: f64,
    diameter: f64,
    t: usize,
    y: Vec<f64>,
    z_sq_accum: f64,
}

impl<'a> MirrorProx<'a> {
    pub fn new(problem: &'a VIProblem, oracle: OracleMode<'a>, mode: StepMode, g0: f64) -> Result<Self> {
        if let OracleMode::Stochastic(o) = &oracle {
            if o.base().geometry() != problem.geometry() {
                return Err(Error::InvalidParameter("stochastic oracle wraps a different problem".into()));
            }
        }
        let geom = problem.geometry();
        Ok(Self { problem, oracle, mode, g0, diameter: geom.diameter(), t: 0, y: geom.min_point(), z_sq_accum: 0.0 })
    }

    /// The current anchor `y_t` (initially `y₀ = argmin_K R`).
    pub fn anchor(&self) -> &[f64] {
        &self.y
    }

    fn sample(&mut self, x: &[f64]) -> Result<Vec<f64>> {
        match &mut self.oracle {
            OracleMode::Exact => Ok(self.problem.eval(x)),
            OracleMode::Stochastic(o) => o.noisy_eval(x),
        }
    }

    pub fn step(&mut self) -> Result<StepState> {
        let t = self.t + 1;
        let eta = match self.mode {
            StepMode::Universal => update_eta(self.z_sq_accum, self.diameter, self.g0),
            StepMode::FixedStep { eta } => eta,
        };
        let abort = |reason: &str| Error::NumericAbort { t, eta, reason: reason.to_string() };
        if !(eta.is_finite() && eta > 0.0) {
            return Err(abort("step size is not a positive finite number"));
        }
        let geom = self.problem.geometry();
        let y_prev = std::mem::take(&mut self.y);

        let hint = self.sample(&y_prev)?;
        if !all_finite(&hint) {
            return Err(abort("non-finite hint M_t"));
        }
        let x = geom.prox_step(&y_prev, &hint, eta)?;
        if !all_finite(&x) {
            return Err(abort("non-finite iterate x_t"));
        }
        let loss = self.sample(&x)?;
        if !all_finite(&loss) {
            return Err(abort("non-finite loss g_t"));
        }
        let y = geom.prox_step(&y_prev, &loss, eta)?;
        if !all_finite(&y) {
            return Err(abort("non-finite iterate y_t"));
        }
        let z_sq = compute_z_sq(geom, &x, &y, &y_prev, eta)?;
        if !z_sq.is_finite() {
            return Err(abort("non-finite Z_t^2"));
        }

        let state = StepState { t, y_prev, x, y: y.clone(), hint, loss, eta, z_sq, z_sq_accum: self.z_sq_accum };
        self.z_sq_accum += z_sq;
        self.y = y;
        self.t = t;
        Ok(state)
    }
}

/// Runs Universal Mirror-Prox (or its fixed-step variant, per
/// `config.mode`) and returns the trace with `x̄_T`.
pub fn universal_mirror_prox(problem: &VIProblem, oracle: OracleMode<'_>, config: &SolverConfig) -> Result<RunTrace> {
    config.validate()?;
    let started = Instant::now();
    let geom = problem.geometry();
    let mut driver = MirrorProx::new(problem, oracle, config.mode, config.g0)?;
    let y0 = driver.anchor().to_vec();

    let mut x_sum = KahanSum::new(geom.dim());
    let mut records = Vec::with_capacity(config.iterations / config.record_every + 1);
    let mut diagnostics = RunDiagnostics { eta_non_increasing: true, ..Default::default() };
    let mut last_eta = f64::INFINITY;

    for t in 1..=config.iterations {
        let s = driver.step()?;
        x_sum.add(&s.x);

        let dx = geom.primal_norm(&sub(&s.x, &s.y_prev))?;
        let dy = geom.primal_norm(&sub(&s.y, &s.y_prev))?;
        diagnostics.max_x_ratio = diagnostics.max_x_ratio.max(dx / s.eta);
        diagnostics.max_y_ratio = diagnostics.max_y_ratio.max(dy / s.eta);
        diagnostics.max_z_sq = diagnostics.max_z_sq.max(s.z_sq);
        diagnostics.max_oracle_norm =
            diagnostics.max_oracle_norm.max(geom.dual_norm(&s.hint)?).max(geom.dual_norm(&s.loss)?);
        diagnostics.eta_non_increasing &= s.eta <= last_eta;
        last_eta = s.eta;

        if t % config.record_every == 0 || t == config.iterations {
            records.push(StepRecord {
                t,
                eta: s.eta,
                z_sq: s.z_sq,
                x: s.x,
                y: s.y,
                hint: s.hint,
                loss: s.loss,
                x_sum: x_sum.sum().to_vec(),
            });
        }
    }

    Ok(RunTrace {
        y0,
        records,
        average: x_sum.mean(config.iterations),
        iterations: config.iterations,
        record_every: config.record_every,
        z_sq_total: driver.z_sq_accum,
        diagnostics,
        duration: started.elapsed(),
    })
}

/// Classic Mirror-Prox with a constant step size, exact oracle.
pub fn fixed_step_mirror_prox(problem: &VIProblem, eta: f64, iterations: usize) -> Result<RunTrace> {
    universal_mirror_prox(problem, OracleMode::Exact, &SolverConfig::fixed_step(iterations, eta))
}
