//! Ballistic spreading of the symmetric pair: the mean distance grows like
//! `t` and the variance like `2(2 − √2)·t²`, against `t` for a classical walk.

use qwalk::evolution::evolve;
use qwalk::{make_initial, moments, support_bounds, Boundary, InitialState, WalkKind};

fn main() -> qwalk::Result<()> {
    let init = InitialState::SymmetricPair;
    let c2 = 2.0 * (2.0 - std::f64::consts::SQRT_2);
    println!(
        "{:>5} {:>12} {:>12} {:>14} {:>10}",
        "t", "<|n-1/2|>/t", "m2/(c2 t^2)", "support", "norm"
    );
    for t in [16u64, 32, 64, 128, 200] {
        let field = make_initial(&init, Boundary::Line, t)?;
        let out = evolve(&field, t, WalkKind::CoinlessStaggered)?;
        let m = moments(&out, init.center());
        let (lo, hi) = support_bounds(&out)?.unwrap_or((0, 0));
        let tf = t as f64;
        println!(
            "{t:>5} {:>12.6} {:>12.6} {:>14} {:>10.2e}",
            m.abs_first_moment / tf,
            m.second_moment / (c2 * tf * tf),
            format!("[{lo}, {hi}]"),
            (m.total_probability - 1.0).abs()
        );
    }
    Ok(())
}
