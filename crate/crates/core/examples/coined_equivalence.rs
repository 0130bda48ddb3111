//! The coinless walk is a coined flip-flop walk in disguise: pairing sites
//! `(2N, 2N+1)` into a two-component cell maps one onto the other exactly.

use qwalk::evolution::{step_coined, step_coinless};
use qwalk::state::{pack, unpack};
use qwalk::{make_initial, Boundary, InitialState, C64};

fn main() -> qwalk::Result<()> {
    let init = InitialState::Custom(vec![
        (-2, C64::new(0.5, 0.0)),
        (-1, C64::new(0.0, 0.5)),
        (0, C64::new(0.5, 0.0)),
        (3, C64::new(-0.5, 0.0)),
    ]);
    let steps = 40;
    let mut sites = make_initial(&init, Boundary::Line, steps)?;
    let mut cells = pack(&sites);
    let mut worst = 0.0f64;
    for _ in 0..steps {
        step_coinless(&mut sites)?;
        step_coined(&mut cells)?;
        worst = worst.max(unpack(&cells).max_abs_diff(&sites));
    }
    println!("{steps} steps, {} cells", cells.len());
    println!("max |coined - coinless| over all steps: {worst:.2e}");
    Ok(())
}
