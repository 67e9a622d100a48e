//! The sequence inequalities behind the step-size analysis, checked on
//! random instances, and a Monte-Carlo look at the martingale bound.

use uvi::analysis::{lemma4_check, lemma5_check, lemma7_check, lemma8_check, lemma_suite, prop1_mc};
use uvi::Geometry;

fn main() -> uvi::Result<()> {
    let seq = [1.0, 0.0, 3.0, 0.5, 2.0];
    println!("square-root chain: {:?}", lemma4_check(0.5, &seq, None)?);
    println!("ratio sum:         {:?}", lemma5_check(0.5, &seq, None)?);
    println!("normalised sum:    {:?}", lemma7_check(&seq)?);
    println!("log sum:           {:?}", lemma8_check(&seq)?);

    println!();
    print!("{}", uvi::cli::format_table(&lemma_suite(7, 1000)?));

    println!();
    for (d, n) in [(2, 5), (3, 10), (5, 50), (10, 100)] {
        let r = prop1_mc(&Geometry::entropic_simplex(d)?, n, 20_000, 1)?;
        println!(
            "d={d:<3} n={n:<4} E[S·X] = {:.3} ± {:.3}   (D/2)·sqrt(V) = {:.3}   D·sqrt(V) = {:.3}",
            r.lhs_estimate, r.std_error, r.stated_rhs, r.proof_rhs
        );
    }
    Ok(())
}
