//! The regret of the optimistic updates along a run, next to the bound
//! built from step sizes and movements.

use uvi::analysis::regret_bound_check;
use uvi::gap::dual_gap;
use uvi::operators::{l1_ball, random_game, StochasticOracle};
use uvi::solver::{universal_mirror_prox, OracleMode, SolverConfig};

fn main() -> uvi::Result<()> {
    let game = random_game(3, 3, 5)?;
    let mut oracle = StochasticOracle::new(game.clone(), 0.3, 9)?;
    let noisy = universal_mirror_prox(&game, OracleMode::Stochastic(&mut oracle), &SolverConfig::universal(1000))?;
    let ball = l1_ball(vec![0.3, -2.0, 1.0], 1.0)?;
    let exact = universal_mirror_prox(&ball, OracleMode::Exact, &SolverConfig::universal(1000))?;

    for (p, trace) in [(&game, &noisy), (&ball, &exact)] {
        println!("{} (final gap {:.3e})", p.name(), dual_gap(p, &trace.average)?);
        for t in [10, 100, 500, 1000] {
            let c = regret_bound_check(p, trace, t)?;
            println!(
                "  t = {t:>4}  regret {:>9.4}  bound {:>9.4}  {}",
                c.lhs,
                c.rhs,
                if c.holds { "ok" } else { "VIOLATED" }
            );
        }
    }
    Ok(())
}
