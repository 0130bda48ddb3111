//! Compares the exact distribution at `t = 32` with the smoothed long-time
//! density, both as an 8-site sliding average and as cell masses.
//!
//! The sliding average resolves the bulk well; the inverse-square-root edges
//! near `½ ± √2·t` are where the two part ways.

use qwalk::asymptotics::{peak_band, peak_constant, SmoothedPdf};
use qwalk::evolution::evolve;
use qwalk::{make_initial, Boundary, InitialState, WalkKind};

fn main() -> qwalk::Result<()> {
    let t = 32u64;
    let init = InitialState::SymmetricPair;
    let out = evolve(
        &make_initial(&init, Boundary::Line, t)?,
        t,
        WalkKind::CoinlessStaggered,
    )?;
    let pdf = SmoothedPdf::new(t, init.center())?;

    println!(
        "{:>7} {:>12} {:>12} {:>9}",
        "center", "avg8 exact", "smooth", "rel err"
    );
    for cell in (-22..=22).step_by(4) {
        let c = cell as f64 + 0.5;
        let avg: f64 = (cell - 3..=cell + 4)
            .map(|n| out.get(n).norm_sqr())
            .sum::<f64>()
            / 8.0;
        let smooth = pdf.density(c);
        println!(
            "{c:>7.1} {avg:>12.6} {smooth:>12.6} {:>9.4}",
            (avg - smooth).abs() / smooth
        );
    }

    println!("\nlargest |psi| in the peak band against the envelope c t^(-1/3):");
    for t in [64u64, 128, 256, 512] {
        let out = evolve(
            &make_initial(&init, Boundary::Line, t)?,
            t,
            WalkKind::CoinlessStaggered,
        )?;
        let edge = std::f64::consts::SQRT_2 * t as f64;
        let band = peak_band(t, 1.0);
        let peak = out
            .sites()
            .filter(|(n, _)| ((*n as f64 - 0.5).abs() - edge).abs() <= band)
            .map(|(_, a)| a.norm())
            .fold(0.0, f64::max);
        println!(
            "  t = {t:>3}: {peak:.5}  envelope {:.5}",
            peak_constant() * (t as f64).powf(-1.0 / 3.0)
        );
    }
    Ok(())
}
