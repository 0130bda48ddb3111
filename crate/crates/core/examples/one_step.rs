//! One step from the origin spreads the walker evenly over four sites.
//!
//! Run with `cargo run --example one_step`.

use qwalk::evolution::{apply_ue, apply_uo};
use qwalk::{make_initial, Boundary, InitialState};

fn main() -> qwalk::Result<()> {
    let mut field = make_initial(&InitialState::OriginDelta, Boundary::Line, 1)?;

    apply_uo(&mut field)?;
    println!("after U_o:");
    for n in 0..=1 {
        println!("  psi({n}) = {:.6}", field.get(n));
    }

    apply_ue(&mut field)?;
    println!("after U_e U_o:");
    for n in -1..=2 {
        let a = field.get(n);
        println!("  psi({n:>2}) = {a:.6}   |psi|^2 = {:.6}", a.norm_sqr());
    }
    Ok(())
}
