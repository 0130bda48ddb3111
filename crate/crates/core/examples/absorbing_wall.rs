//! Absorption at a wall between `-1` and `0`. A classical walker is absorbed
//! with certainty; the quantum walker escapes with finite probability.

use qwalk::wall::{estimate_asymptote, run_absorption};
use qwalk::InitialState;

fn main() -> qwalk::Result<()> {
    let two_over_pi = 2.0 / std::f64::consts::PI;
    for (name, init) in [
        ("symmetric", InitialState::SymmetricPair),
        ("origin", InitialState::OriginDelta),
    ] {
        let series = run_absorption(&init, 1000)?;
        println!("{name}:");
        for t in [1usize, 2, 3, 10, 100, 1000] {
            println!("  P_abs({t:>4}) = {:.6}", series.values[t]);
        }
        let est = estimate_asymptote(&series)?;
        println!(
            "  asymptote ~ {:.4} (converged: {}), 2/pi = {two_over_pi:.4}",
            est.value, est.converged
        );
    }
    Ok(())
}
