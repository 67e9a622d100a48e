//! Driving the experiment runner from code: the same JSON the `uvi` binary
//! reads, written to a scratch directory.

use uvi::cli::{run_into, sweep, ExperimentConfig};

fn main() -> uvi::Result<()> {
    let dir = std::env::temp_dir().join("uvi-example");
    let config = ExperimentConfig::from_json(
        r#"{
            "problem": { "name": "random-game", "params": { "d1": 5, "d2": 3, "seed": 2 } },
            "T": 1000,
            "noise": { "bound": 0.2 },
            "seeds": [0, 1, 2, 3],
            "eval_every": 100
        }"#,
    )?;

    let summary = run_into(&config, &dir)?;
    println!("{}", serde_json::to_string_pretty(&summary.bounds)?);
    println!("mean gap {:.3e}; traces in {}", summary.mean_gap, dir.display());

    let mut base = config.clone();
    base.output_dir = dir.join("sweep");
    base.eval_every = Some(250);
    let s = sweep(&base, &[250, 500, 1000, 2000])?;
    if let Some(fit) = s.rate_fit {
        println!("sweep exponent {:.3} (r2 {:.3})", fit.exponent, fit.r2);
    }
    Ok(())
}
