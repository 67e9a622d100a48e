//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.
//!
//! Two criteria fail for reasons analysed in the README ("Known failures");
//! they are listed in `KNOWN_FAILURES`, still evaluated in full, reported as
//! FAIL, and the test asserts they keep failing so a change in behaviour is
//! noticed either way.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use uvi::analysis::{adapter_checks, lemma_suite, rate_fit, regret_bound_check, RateFit};
use uvi::gap::dual_gap;
use uvi::operators::{asymmetric_2x2, builtin_problems, l1_ball, StochasticOracle};
use uvi::solver::{fixed_step_mirror_prox, universal_mirror_prox, OracleMode, RunTrace, SolverConfig};
use uvi::VIProblem;

const SWEEP: [usize; 4] = [500, 1000, 2000, 4000];
const SEEDS: u64 = 20;
const NOISE: f64 = 0.5;

const KNOWN_FAILURES: [u32; 2] = [2, 7];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

/// Largest movement ratio / `Z` seen across runs, against each run's `G`.
#[derive(Default)]
struct MovementTracker {
    worst_slack: f64,
    runs: usize,
    worst: String,
}

impl MovementTracker {
    fn observe(&mut self, name: &str, trace: &RunTrace, g: f64) {
        let d = &trace.diagnostics;
        let z = d.max_z_sq.sqrt();
        let excess = d.max_x_ratio.max(d.max_y_ratio).max(z) - g;
        if self.runs == 0 || excess > self.worst_slack {
            self.worst_slack = excess;
            self.worst = format!(
                "{name} T={}: ratios {:.4}/{:.4}, Z {:.4}, G {:.4}",
                trace.iterations, d.max_x_ratio, d.max_y_ratio, z, g
            );
        }
        self.runs += 1;
    }
}

fn exact_sweep(p: &VIProblem, g0: f64, tracker: &mut MovementTracker) -> (Vec<f64>, RateFit) {
    let gaps: Vec<f64> = SWEEP
        .iter()
        .map(|&t| {
            let cfg = SolverConfig::universal(t).with_g0(g0).with_record_every(t);
            let trace = universal_mirror_prox(p, OracleMode::Exact, &cfg).unwrap();
            tracker.observe(p.name(), &trace, p.g_bound());
            dual_gap(p, &trace.average).unwrap()
        })
        .collect();
    let pts: Vec<(f64, f64)> = SWEEP.iter().map(|t| *t as f64).zip(gaps.iter().copied()).collect();
    (gaps, rate_fit(&pts).unwrap())
}

fn noisy_mean_gaps(p: &VIProblem, g0: f64, tracker: &mut MovementTracker) -> Vec<f64> {
    SWEEP
        .iter()
        .map(|&t| {
            let mut total = 0.0;
            for seed in 0..SEEDS {
                let mut oracle = StochasticOracle::new(p.clone(), NOISE, seed).unwrap();
                let g = oracle.g_bound();
                let cfg = SolverConfig::universal(t).with_g0(g0).with_record_every(t);
                let trace = universal_mirror_prox(p, OracleMode::Stochastic(&mut oracle), &cfg).unwrap();
                tracker.observe(p.name(), &trace, g);
                total += dual_gap(p, &trace.average).unwrap();
            }
            total / SEEDS as f64
        })
        .collect()
}

fn timed(id: u32, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = f();
    Outcome { id, pass, detail, elapsed: start.elapsed() }
}

fn fmt_gaps(g: &[f64]) -> String {
    g.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(", ")
}

fn run_cli(config: &Path, out: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_uvi"))
        .arg("run")
        .arg(config)
        .env("UVI_OUTPUT_DIR", out)
        .output()
        .expect("uvi binary runs")
}

#[test]
fn acceptance() {
    let game = asymmetric_2x2();
    let l1 = l1_ball(vec![2.0, 0.0], 1.0).unwrap();
    let mut movement = MovementTracker::default();
    let mut outcomes = Vec::new();

    outcomes.push(timed(1, || {
        let (gaps, fit) = exact_sweep(&game, game.g_bound(), &mut movement);
        let pass = fit.exponent <= -0.8 && fit.r2 >= 0.95;
        (pass, format!("smooth game: exponent {:.4}, r2 {:.4}; gaps [{}]", fit.exponent, fit.r2, fmt_gaps(&gaps)))
    }));

    outcomes.push(timed(2, || {
        let (gaps, fit) = exact_sweep(&l1, l1.g_bound(), &mut movement);
        let pass = (-0.7..=-0.35).contains(&fit.exponent);
        (pass, format!("l1-ball: exponent {:.4} (want [-0.7, -0.35]); gaps [{}]", fit.exponent, fmt_gaps(&gaps)))
    }));

    outcomes.push(timed(3, || {
        let means = noisy_mean_gaps(&game, game.g_bound() + NOISE, &mut movement);
        let ratio = means[3] / means[1];
        (ratio <= 0.6, format!("noisy game: gap(4000)/gap(1000) = {ratio:.4}; means [{}]", fmt_gaps(&means)))
    }));

    outcomes.push(timed(4, || {
        let means = noisy_mean_gaps(&l1, l1.g_bound() + NOISE, &mut movement);
        let decreasing = means.windows(2).all(|w| w[1] < w[0]);
        let ratio = means[3] / means[1];
        (
            decreasing && ratio <= 0.65,
            format!("noisy l1-ball: strictly decreasing {decreasing}, ratio {ratio:.4}; means [{}]", fmt_gaps(&means)),
        )
    }));

    outcomes.push(timed(5, || {
        let pass = movement.worst_slack <= 1e-9;
        (
            pass,
            format!(
                "{} runs; worst max(ratio, Z) − G = {:.3e} ({})",
                movement.runs, movement.worst_slack, movement.worst
            ),
        )
    }));

    outcomes.push(timed(6, || {
        let mut pass = true;
        let mut parts = Vec::new();
        for p in [&game, &l1] {
            let cfg = SolverConfig::universal(500).with_g0(p.g_bound());
            let trace = universal_mirror_prox(p, OracleMode::Exact, &cfg).unwrap();
            for t in [100, 250, 500] {
                let c = regret_bound_check(p, &trace, t).unwrap();
                pass &= c.holds;
                parts.push(format!("{}@{t}: {:.3e} <= {:.3e}", p.name(), c.lhs, c.rhs));
            }
        }
        (pass, parts.join("; "))
    }));

    outcomes.push(timed(7, || {
        let rows = lemma_suite(42, 1000).unwrap();
        let failing: Vec<String> = rows.iter().filter(|r| !r.passed()).map(|r| r.name.clone()).collect();
        let summary =
            rows.iter().map(|r| format!("{} {}", r.name, if r.passed() { "ok" } else { "FAILED" })).collect::<Vec<_>>();
        (failing.is_empty(), summary.join("; "))
    }));

    outcomes.push(timed(8, || {
        let universal = universal_mirror_prox(
            &game,
            OracleMode::Exact,
            &SolverConfig::universal(4000).with_g0(game.g_bound()).with_record_every(4000),
        )
        .unwrap();
        let fixed = fixed_step_mirror_prox(&game, 1.0 / game.smoothness().unwrap(), 4000).unwrap();
        let (u, f) = (dual_gap(&game, &universal.average).unwrap(), dual_gap(&game, &fixed.average).unwrap());
        (u <= 10.0 * f, format!("universal {u:.3e} vs fixed-step(1/L) {f:.3e}, ratio {:.3}", u / f))
    }));

    outcomes.push(timed(9, || {
        let cat = builtin_problems();
        let mut failures = Vec::new();
        let mut checked = 0;
        for p in cat.defaults() {
            for row in adapter_checks(&p, 1000, 9).unwrap() {
                checked += 1;
                if !row.passed() {
                    failures.push(format!("{}: {:?}", row.name, row.counterexample));
                }
            }
        }
        (failures.is_empty(), format!("{checked} checks over {} problems; failures: {failures:?}", cat.names().len()))
    }));

    outcomes.push(timed(10, || {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("config.json");
        std::fs::write(
            &cfg,
            r#"{"problem": {"name": "rps"}, "T": 1000, "noise": {"bound": 0.3}, "seeds": [1, 2, 3], "eval_every": 50}"#,
        )
        .unwrap();
        let (a, b) = (dir.path().join("a"), dir.path().join("b"));
        let ok = run_cli(&cfg, &a).status.success() && run_cli(&cfg, &b).status.success();
        let identical = ok
            && [1, 2, 3].iter().all(|s| {
                let name = format!("trace_{s}.csv");
                std::fs::read(a.join(&name)).unwrap() == std::fs::read(b.join(&name)).unwrap()
            });
        (identical, format!("two `uvi run` invocations, 3 seeds: byte-identical = {identical}"))
    }));

    let total: Duration = outcomes.iter().map(|o| o.elapsed).sum();
    println!();
    for o in &outcomes {
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = if KNOWN_FAILURES.contains(&o.id) && !o.pass { " [known failure]" } else { "" };
        println!("criterion {:>2}: {status}{note} ({:.2?}) {}", o.id, o.elapsed, o.detail);
    }
    println!("total {total:.2?}");

    for o in &outcomes {
        if KNOWN_FAILURES.contains(&o.id) {
            assert!(!o.pass, "criterion {} now passes; update KNOWN_FAILURES and the README", o.id);
        } else {
            assert!(o.pass, "criterion {} failed: {}", o.id, o.detail);
        }
    }
}
