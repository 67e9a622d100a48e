//! Solving zero-sum matrix games: the universal step size against a
//! hand-tuned fixed step of 1/L.

use nalgebra::DMatrix;
use uvi::gap::{dual_gap, gap_series};
use uvi::operators::{matrix_game, random_game, rps};
use uvi::solver::{fixed_step_mirror_prox, universal_mirror_prox, OracleMode, SolverConfig};

fn main() -> uvi::Result<()> {
    let games = [
        rps(),
        random_game(6, 4, 11)?,
        matrix_game("biased", DMatrix::from_row_slice(2, 3, &[3.0, -1.0, 0.5, -2.0, 1.0, 0.0]))?,
    ];
    for game in &games {
        let l = game.smoothness().expect("games are smooth");
        let universal =
            universal_mirror_prox(game, OracleMode::Exact, &SolverConfig::universal(2000).with_record_every(250))?;
        let fixed = fixed_step_mirror_prox(game, 1.0 / l, 2000)?;

        println!("{} (G = {:.3}, L = {:.3})", game.name(), game.g_bound(), l);
        for p in gap_series(game, &universal, 500)? {
            println!("  t = {:>5}  gap {:.3e}", p.t, p.gap);
        }
        println!(
            "  final eta {:.4}, fixed-step gap {:.3e}",
            universal.final_record().eta,
            dual_gap(game, &fixed.average)?
        );
        let (u, v) = universal.average.split_at(universal.average.len() - game.geometry().blocks().unwrap().1.dim());
        println!("  row strategy {u:.3?}\n  col strategy {v:.3?}");
    }
    Ok(())
}
