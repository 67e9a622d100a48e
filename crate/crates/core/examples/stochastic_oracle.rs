//! Noisy operator samples: the step size adapts to the noise without being
//! told its level.

use uvi::gap::dual_gap;
use uvi::operators::{l1_ball, rps, StochasticOracle};
use uvi::solver::{universal_mirror_prox, OracleMode, SolverConfig};

fn main() -> uvi::Result<()> {
    for problem in [rps(), l1_ball(vec![2.0, 0.0], 1.0)?] {
        println!("{}", problem.name());
        for noise in [0.0, 0.25, 1.0] {
            let mut row = Vec::new();
            for t in [250, 1000, 4000] {
                let mut total = 0.0;
                for seed in 0..10 {
                    let mut oracle = StochasticOracle::new(problem.clone(), noise, seed)?;
                    let cfg = SolverConfig::universal(t).with_record_every(t);
                    let trace = universal_mirror_prox(&problem, OracleMode::Stochastic(&mut oracle), &cfg)?;
                    total += dual_gap(&problem, &trace.average)?;
                }
                row.push(format!("T={t}: {:.3e}", total / 10.0));
            }
            println!("  noise {noise:<4}  {}", row.join("  "));
        }
    }
    Ok(())
}
