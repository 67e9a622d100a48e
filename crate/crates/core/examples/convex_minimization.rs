//! Constrained convex minimisation, smooth and non-smooth, with the same
//! untuned solver. The last problem has no closed-form minimum, so the gap
//! evaluator solves it once and reports a certified tolerance.

use std::sync::Arc;

use uvi::gap::{dual_gap, dual_gap_estimate};
use uvi::operators::{builtin_problems, convex_min_problem};
use uvi::solver::{universal_mirror_prox, OracleMode, SolverConfig};
use uvi::Geometry;

fn main() -> uvi::Result<()> {
    let catalog = builtin_problems();
    for name in ["quadratic-ball", "l1-ball", "piecewise-max"] {
        let p = catalog.build(name, &serde_json::Value::Null)?;
        let trace =
            universal_mirror_prox(&p, OracleMode::Exact, &SolverConfig::universal(3000).with_record_every(3000))?;
        println!(
            "{name:<15} smooth={:<5} x = {:.5?}  gap {:.3e}",
            p.smoothness().is_some(),
            trace.average,
            dual_gap(&p, &trace.average)?
        );
    }

    // log-sum-exp over a box, no closed-form minimum
    let f = Arc::new(|x: &[f64]| ((x[0] - 1.0).exp() + (0.5 - x[1]).exp() + (x[0] + x[1]).exp()).ln());
    let grad = Arc::new(|x: &[f64]| {
        let e = [(x[0] - 1.0).exp(), (0.5 - x[1]).exp(), (x[0] + x[1]).exp()];
        let s: f64 = e.iter().sum();
        vec![(e[0] + e[2]) / s, (e[2] - e[1]) / s]
    });
    let p = convex_min_problem("lse", f, grad, Geometry::boxed(vec![-2.0, -2.0], vec![2.0, 2.0])?, 2f64.sqrt())?;
    let trace = universal_mirror_prox(&p, OracleMode::Exact, &SolverConfig::universal(2000).with_record_every(2000))?;
    let est = dual_gap_estimate(&p, &trace.average)?;
    println!("{:<15} x = {:.5?}  gap {:.3e} (± {:.1e})", "lse", trace.average, est.value, est.tolerance);
    Ok(())
}
