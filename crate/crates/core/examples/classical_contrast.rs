use qwalk::evolution::evolve;
use qwalk::{make_initial, moments, Boundary, InitialState, WalkKind};

// Second moments of the quantum and classical walks from the origin.
fn main() -> qwalk::Result<()> {
    println!(
        "{:>5} {:>14} {:>10} {:>8}",
        "t", "quantum m2", "classical", "ratio"
    );
    for t in [8u64, 32, 128, 512] {
        let init = make_initial(&InitialState::OriginDelta, Boundary::Line, t)?;
        let q = moments(&evolve(&init, t, WalkKind::CoinlessStaggered)?, 0.0).second_moment;
        let c = moments(&evolve(&init, t, WalkKind::ClassicalSymmetric)?, 0.0).second_moment;
        println!("{t:>5} {q:>14.2} {c:>10.2} {:>8.2}", q / c);
    }
    Ok(())
}
