//! On an even ring the walk stays unitary forever and revisits the origin
//! quasi-periodically.

use qwalk::evolution::step_coinless;
use qwalk::spectral::evolve_field_spectral;
use qwalk::{make_initial, Boundary, InitialState};

fn main() -> qwalk::Result<()> {
    let ring = Boundary::Circle(64);
    let init = make_initial(&InitialState::OriginDelta, ring, 0)?;
    let mut field = init.clone();
    let mut best = (0u64, 0.0f64);
    for t in 1..=10_000u64 {
        step_coinless(&mut field)?;
        let p0 = field.get(0).norm_sqr();
        if t > 64 && p0 > best.1 {
            best = (t, p0);
        }
    }
    println!(
        "N = 64, 10000 steps: |norm - 1| = {:.2e}",
        (field.norm_sqr() - 1.0).abs()
    );
    println!(
        "largest return probability after t = 64: P(0, {}) = {:.4}",
        best.0, best.1
    );

    let fourier = evolve_field_spectral(&init, 10_000)?;
    println!(
        "direct vs spectral on the ring: {:.2e}",
        field.max_abs_diff(&fourier)
    );
    Ok(())
}
