use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uvi::cli::{self, Suite};

#[derive(Parser)]
#[command(name = "uvi", version, about = "Universal Mirror-Prox experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config (one run per seed).
    Run { config: PathBuf },
    /// Repeat a config over several horizons and fit the log-log rate.
    Sweep {
        config: PathBuf,
        #[arg(long = "T", value_delimiter = ',', default_value = "500,1000,2000,4000")]
        horizons: Vec<usize>,
    },
    /// Run the inequality and invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn fail(err: uvi::Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(cli::exit_code(&err) as u8)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { config } => match cli::cmd_run(&config) {
            Ok(s) => {
                for r in &s.runs {
                    println!("seed {:>4}  final gap {:.6e}", r.seed, r.final_gap);
                }
                println!("mean gap {:.6e}", s.mean_gap);
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Sweep { config, horizons } => match cli::cmd_sweep(&config, &horizons) {
            Ok(s) => {
                for p in &s.points {
                    println!("T={:<7} mean gap {:.6e}", p.iterations, p.mean_gap);
                }
                match s.rate_fit {
                    Some(f) => println!("exponent {:.4}  r2 {:.4}", f.exponent, f.r2),
                    None => println!("exponent n/a (fewer than 3 positive gaps)"),
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Verify { suite, seed } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            match cli::cmd_verify(suite, seed) {
                Ok(rows) => {
                    print!("{}", cli::format_table(&rows));
                    if rows.iter().all(|r| r.passed()) {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail(e),
            }
        }
    }
}
