//! Momentum-space evolution: eigenvalues of `M(k)`, closed-form projections of
//! the symmetric pair, and agreement with direct stepping.

use qwalk::evolution::evolve;
use qwalk::spectral::{closed_form_projection, eigensystem, evolve_spectral, project_initial};
use qwalk::{make_initial, Boundary, InitialState, WalkKind};

fn main() -> qwalk::Result<()> {
    println!("{:>8} {:>10} {:>12}", "k", "omega", "|det M - 1|");
    for k in [0.0, 0.5, 1.0, std::f64::consts::FRAC_PI_2, 2.5] {
        let es = eigensystem(k);
        let det = es.lambda_plus * es.lambda_minus;
        println!("{k:>8.4} {:>10.6} {:>12.2e}", es.omega, (det - 1.0).norm());
    }

    let init = InitialState::SymmetricPair;
    let spectral = project_initial(&init, 64)?;
    let worst = spectral
        .projections
        .as_ref()
        .expect("projections are filled")
        .iter()
        .enumerate()
        .filter_map(|(j, (p, m))| {
            let (cp, cm) = closed_form_projection(&init, spectral.wavenumber(j))?;
            Some(
                (0..2)
                    .map(|i| (p[i] - cp[i]).norm().max((m[i] - cm[i]).norm()))
                    .fold(0.0, f64::max),
            )
        })
        .fold(0.0, f64::max);
    println!("closed-form vs numeric projection, 64 k-points: max deviation {worst:.2e}");

    let t = 32;
    let direct = evolve(
        &make_initial(&init, Boundary::Line, t)?,
        t,
        WalkKind::CoinlessStaggered,
    )?;
    let fourier = evolve_spectral(&init, t, 160)?;
    let dev = (-2 * t as i64..=2 * t as i64 + 1)
        .map(|n| (direct.get(n) - fourier.get(n)).norm())
        .fold(0.0, f64::max);
    println!("direct vs spectral at t = {t}: max amplitude deviation {dev:.2e}");
    Ok(())
}
