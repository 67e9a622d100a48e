//! Empirical convergence rates against the theorem shapes.
//!
//! Prints the fitted log-log exponent for a smooth game, two non-smooth
//! problems and a noisy game, next to the exponent of the matching bound.

use uvi::analysis::{rate_fit, theorem_bounds, BoundContext};
use uvi::gap::dual_gap;
use uvi::operators::{asymmetric_2x2, builtin_problems, StochasticOracle};
use uvi::solver::{universal_mirror_prox, OracleMode, SolverConfig};
use uvi::VIProblem;

const HORIZONS: [usize; 4] = [500, 1000, 2000, 4000];

fn sweep(p: &VIProblem, noise: Option<f64>) -> uvi::Result<Vec<(f64, f64)>> {
    HORIZONS
        .iter()
        .map(|&t| {
            let cfg = SolverConfig::universal(t).with_record_every(t);
            let seeds = if noise.is_some() { 10 } else { 1 };
            let mut total = 0.0;
            for seed in 0..seeds {
                let trace = match noise {
                    None => universal_mirror_prox(p, OracleMode::Exact, &cfg)?,
                    Some(b) => {
                        let mut o = StochasticOracle::new(p.clone(), b, seed)?;
                        universal_mirror_prox(p, OracleMode::Stochastic(&mut o), &cfg)?
                    }
                };
                total += dual_gap(p, &trace.average)?;
            }
            Ok((t as f64, total / seeds as f64))
        })
        .collect()
}

fn main() -> uvi::Result<()> {
    let catalog = builtin_problems();
    let cases = [
        (asymmetric_2x2(), None),
        (catalog.build("piecewise-max", &serde_json::Value::Null)?, None),
        (catalog.build("l1-ball", &serde_json::Value::Null)?, None),
        (catalog.build("rps", &serde_json::Value::Null)?, Some(0.5)),
    ];
    for (p, noise) in &cases {
        let points = sweep(p, *noise)?;
        let fit = rate_fit(&points)?;
        let mut ctx = BoundContext::for_problem(p, 1.0);
        if let Some(b) = noise {
            ctx = ctx.with_noise(*b);
        }
        let shape: Vec<(f64, f64)> = HORIZONS
            .iter()
            .map(|&t| {
                let r = theorem_bounds(&ctx, t);
                let v = match noise {
                    Some(_) => r.thm4_rhs.or(r.thm3_rhs),
                    None => r.thm1_rhs.or(r.thm2_rhs),
                };
                (t as f64, v.unwrap())
            })
            .collect();
        println!(
            "{:<15} noise {:<4} observed exponent {:+.3} (r2 {:.3}), bound shape {:+.3}",
            p.name(),
            noise.map_or("-".into(), |b| b.to_string()),
            fit.exponent,
            fit.r2,
            rate_fit(&shape)?.exponent
        );
    }
    // l1-ball: the minimiser is a corner reached in finitely many steps, so
    // the averaged gap decays like 1/T rather than the worst-case 1/sqrt(T).
    Ok(())
}
