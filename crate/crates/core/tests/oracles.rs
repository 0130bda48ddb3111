//! Published values and independently computed references.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use qwalk::asymptotics::{
    classify, dispersion_derivatives, interior_site_amplitude, peak_amplitude, smoothed_moments,
    smoothed_pdf, stationary_points, PeakSide, RegionClass,
};
use qwalk::evolution::{
    apply_ue, evolve, step_classical, step_coinless, ClassicalDistribution, CoinMatrix,
};
use qwalk::spectral::{
    closed_form_projection, eigensystem, evolve_spectral, forward_transform, project_initial,
};
use qwalk::wall::{estimate_asymptote, run_absorption};
use qwalk::{
    make_initial, moments, support_bounds, AmplitudeField, Boundary, InitialState, WalkKind, C64,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn walk(init: &InitialState, t: u64) -> AmplitudeField {
    evolve(
        &make_initial(init, Boundary::Line, t).unwrap(),
        t,
        WalkKind::CoinlessStaggered,
    )
    .unwrap()
}

/// Dense matrix built column by column from the site rules
/// `U_o|n⟩ = (|n⟩ + i|n + (−1)^n⟩)/√2` and `U_e|n⟩ = (|n⟩ + i|n − (−1)^n⟩)/√2`.
struct DenseWalk {
    lo: i64,
    uo: Vec<Vec<C64>>,
    ue: Vec<Vec<C64>>,
}

impl DenseWalk {
    fn new(lo: i64, hi: i64) -> Self {
        let w = (hi - lo + 1) as usize;
        let build = |partner: &dyn Fn(i64) -> i64| {
            let mut m = vec![vec![c(0.0, 0.0); w]; w];
            for n in lo..=hi {
                let col = (n - lo) as usize;
                m[col][col] = c(1.0 / SQRT_2, 0.0);
                let p = partner(n) - lo;
                if (0..w as i64).contains(&p) {
                    m[p as usize][col] = c(0.0, 1.0 / SQRT_2);
                }
            }
            m
        };
        let sign = |n: i64| if n.rem_euclid(2) == 0 { 1 } else { -1 };
        Self {
            lo,
            uo: build(&|n| n + sign(n)),
            ue: build(&|n| n - sign(n)),
        }
    }

    fn apply(m: &[Vec<C64>], v: &[C64]) -> Vec<C64> {
        m.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn run(&self, init: &[(i64, C64)], t: u64) -> Vec<C64> {
        let mut v = vec![c(0.0, 0.0); self.uo.len()];
        for &(n, a) in init {
            v[(n - self.lo) as usize] = a;
        }
        for _ in 0..t {
            v = Self::apply(&self.ue, &Self::apply(&self.uo, &v));
        }
        v
    }
}

#[test]
fn initial_states() {
    let o = make_initial(&InitialState::OriginDelta, Boundary::Line, 0).unwrap();
    assert_eq!(o.get(0), c(1.0, 0.0));
    assert_eq!(o.norm_sqr(), 1.0);
    let s = make_initial(&InitialState::SymmetricPair, Boundary::Line, 0).unwrap();
    assert!((s.get(0) - c(1.0 / SQRT_2, 0.0)).norm() < 1e-15);
    assert_eq!(s.get(0), s.get(1));
    let custom = InitialState::Custom(vec![(0, c(0.6, 0.0)), (1, c(0.0, 0.8))]);
    assert!((make_initial(&custom, Boundary::Line, 0).unwrap().norm_sqr() - 1.0).abs() < 1e-15);
}

#[test]
fn combined_rows() {
    let delta = |n: i64| InitialState::Custom(vec![(n, c(1.0, 0.0))]);
    let mut odd = make_initial(&delta(1), Boundary::Line, 1).unwrap();
    step_coinless(&mut odd).unwrap();
    for (n, want) in [
        (-1, c(-0.5, 0.0)),
        (0, c(0.0, 0.5)),
        (1, c(0.5, 0.0)),
        (2, c(0.0, 0.5)),
    ] {
        assert!((odd.get(n) - want).norm() < 1e-15, "n = {n}");
    }

    let s = walk(&InitialState::SymmetricPair, 1);
    let k = 1.0 / (2.0 * SQRT_2);
    for (n, want) in [(-1, c(-k, k)), (0, c(k, k)), (1, c(k, k)), (2, c(-k, k))] {
        assert!((s.get(n) - want).norm() < 1e-15, "n = {n}");
    }
    assert_eq!(
        support_bounds(&walk(&InitialState::OriginDelta, 1)).unwrap(),
        Some((-1, 2))
    );
}

#[test]
fn ue_squared_swaps_with_i() {
    let mut f = make_initial(&InitialState::OriginDelta, Boundary::Line, 1).unwrap();
    apply_ue(&mut f).unwrap();
    apply_ue(&mut f).unwrap();
    assert!((f.get(-1) - c(0.0, 1.0)).norm() < 1e-15);
    assert!(f.get(0).norm() < 1e-15);
}

#[test]
fn coin_on_upper_state() {
    let v = CoinMatrix::default().apply([c(1.0, 0.0), c(0.0, 0.0)]);
    assert!((v[0] - c(1.0 / SQRT_2, 0.0)).norm() < 1e-15);
    assert!((v[1] - c(0.0, 1.0 / SQRT_2)).norm() < 1e-15);
}

#[test]
fn direct_engine_matches_dense_matrices() {
    let t = 20;
    let dense = DenseWalk::new(-44, 45);
    let states = [
        InitialState::OriginDelta,
        InitialState::SymmetricPair,
        InitialState::Custom(vec![
            (-3, c(0.6, 0.0)),
            (4, c(0.0, -0.48)),
            (5, c(0.64, 0.0)),
        ]),
    ];
    for init in &states {
        let expected = dense.run(&init.amplitudes(), t);
        let got = walk(init, t);
        let dev = expected
            .iter()
            .enumerate()
            .map(|(i, a)| (got.get(dense.lo + i as i64) - a).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-13, "{init:?}: {dev:e}");
    }
}

#[test]
fn origin_support_and_norm_at_32() {
    let f = walk(&InitialState::OriginDelta, 32);
    let (lo, hi) = support_bounds(&f).unwrap().unwrap();
    assert!(lo >= -63 && hi <= 64);
    assert!((f.norm_sqr() - 1.0).abs() < 1e-12);
}

#[test]
fn classical_variance_is_t() {
    let init = make_initial(&InitialState::OriginDelta, Boundary::Line, 50).unwrap();
    let mut d = ClassicalDistribution::from_field(&init);
    assert_eq!((d.get(0), d.get(1)), (1.0, 0.0));
    for t in 1..=50u32 {
        step_classical(&mut d).unwrap();
        if t == 1 {
            assert_eq!((d.get(-1), d.get(1)), (0.5, 0.5));
        }
        let m2: f64 = d.sites().map(|(n, p)| (n * n) as f64 * p).sum();
        assert!((m2 - t as f64).abs() < 1e-12 * t as f64, "t = {t}: {m2}");
    }
}

#[test]
fn circle_matches_line_before_wrapping() {
    let ring = make_initial(&InitialState::OriginDelta, Boundary::Circle(128), 0).unwrap();
    let mut f = ring.clone();
    for t in 1..=30u64 {
        step_coinless(&mut f).unwrap();
        let line = walk(&InitialState::OriginDelta, t);
        assert!(
            (-64..64).all(|n: i64| f.get(n.rem_euclid(128)) == line.get(n)),
            "t = {t}"
        );
    }
}

#[test]
fn propagator_special_points() {
    let m = qwalk::spectral::propagator(0.0);
    let zero = c(0.0, 0.0);
    let i = c(0.0, 1.0);
    assert!((m.0[0][0] - zero).norm() < 1e-15 && (m.0[0][1] - i).norm() < 1e-15);
    assert!((m.0[1][0] - i).norm() < 1e-15 && (m.0[1][1] - zero).norm() < 1e-15);
    let id = qwalk::spectral::propagator(FRAC_PI_2);
    assert!((id.0[0][0] - c(1.0, 0.0)).norm() < 1e-15 && id.0[0][1].norm() < 1e-15);
}

#[test]
fn eigenvalues_at_special_points() {
    let e0 = eigensystem(0.0);
    assert!((e0.omega - FRAC_PI_2).abs() < 1e-15);
    assert!((e0.lambda_plus - c(0.0, 1.0)).norm() < 1e-15);
    assert!((e0.lambda_minus - c(0.0, -1.0)).norm() < 1e-15);

    let eh = eigensystem(FRAC_PI_2);
    assert!(eh.degenerate && eh.omega == 0.0 && eh.lambda_plus == eh.lambda_minus);

    let eq = eigensystem(PI / 4.0);
    assert!((eq.omega - PI / 3.0).abs() < 1e-15);
    assert!((eq.lambda_plus - c(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    assert!((eq.lambda_minus - c(0.5, -(3f64.sqrt()) / 2.0)).norm() < 1e-15);
}

#[test]
fn single_site_transform() {
    let f = make_initial(&InitialState::OriginDelta, Boundary::Line, 5).unwrap();
    let s = forward_transform(&f);
    assert!(s
        .components
        .iter()
        .all(|v| (v[0] - c(1.0, 0.0)).norm() < 1e-15 && v[1].norm() < 1e-15));
}

#[test]
fn closed_form_projections() {
    for init in [InitialState::OriginDelta, InitialState::SymmetricPair] {
        let numeric = project_initial(&init, 64).unwrap();
        let proj = numeric.projections.as_ref().unwrap();
        for (j, (p, m)) in proj.iter().enumerate() {
            let k = numeric.wavenumber(j);
            let (cp, cm) = closed_form_projection(&init, k).unwrap();
            for i in 0..2 {
                assert!(
                    (p[i] - cp[i]).norm() < 1e-12 && (m[i] - cm[i]).norm() < 1e-12,
                    "{init:?} j = {j}"
                );
            }
            // the two pieces rebuild the transformed state
            let v = numeric.components[j];
            assert!((cp[0] + cm[0] - v[0]).norm() < 1e-12 && (cp[1] + cm[1] - v[1]).norm() < 1e-12);
        }
    }
    for k in [0.0, PI] {
        let (p, m) = closed_form_projection(&InitialState::SymmetricPair, k).unwrap();
        let e = C64::from_polar(1.0 / SQRT_2, k);
        assert!((p[0] + m[0] - c(1.0 / SQRT_2, 0.0)).norm() < 1e-15);
        assert!((p[1] + m[1] - e).norm() < 1e-15);
    }
}

#[test]
fn spectral_matches_direct() {
    for (init, t) in [
        (InitialState::OriginDelta, 16u64),
        (InitialState::SymmetricPair, 32),
        (InitialState::SymmetricPair, 0),
    ] {
        let direct = walk(&init, t);
        let spectral = evolve_spectral(&init, t, 4 * t as usize + 8).unwrap();
        let dev = (-2 * t as i64 - 2..=2 * t as i64 + 3)
            .map(|n| (direct.get(n) - spectral.get(n)).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-12, "t = {t}: {dev:e}");
    }
}

#[test]
fn dispersion_special_points() {
    let d = dispersion_derivatives(0.0);
    assert!((d.omega - FRAC_PI_2).abs() < 1e-15);
    assert!(d.d1.abs() < 1e-15 && (d.d2 + 2.0).abs() < 1e-15 && d.d3.abs() < 1e-15);
    let h = dispersion_derivatives(FRAC_PI_2);
    assert!((h.d1 + SQRT_2).abs() < 1e-12 && h.d2.abs() < 1e-12);
}

#[test]
fn region_examples() {
    assert_eq!(classify(100.0, 32, 1.0).unwrap(), RegionClass::Outer);
    assert_eq!(classify(0.0, 32, 1.0).unwrap(), RegionClass::Interior);
    assert_eq!(
        classify((SQRT_2 * 32.0).round(), 32, 1.0).unwrap(),
        RegionClass::Peak
    );
}

#[test]
fn stationary_point_examples() {
    let p = stationary_points(0.0, 40).unwrap();
    assert!(p.k01.abs() < 1e-15 && (p.k02 - PI).abs() < 1e-15);
    let p = stationary_points(40.0, 40).unwrap();
    assert!((p.k01.sin() + 1.0 / 3f64.sqrt()).abs() < 1e-12);
    let edge = stationary_points(SQRT_2 * 40.0 * (1.0 - 1e-12), 40).unwrap();
    assert!((edge.k01 + FRAC_PI_2).abs() < 1e-5);
    assert!(stationary_points(SQRT_2 * 40.0 + 1.0, 40).is_err());
}

/// `∫ |x|^order · density dx` over the support, with `x = √2 t sin θ`, by a
/// composite two-point Gauss rule in `θ`. The rule never touches the
/// endpoints and the transformed integrand is smooth on each half.
fn gauss_moment(t: u64, order: i32) -> f64 {
    let a = SQRT_2 * t as f64;
    let f = |theta: f64| {
        let x = a * theta.sin();
        x.abs().powi(order) * smoothed_pdf(x, t, 0.0).unwrap() * a * theta.cos()
    };
    let panels = 4_000;
    let h = PI / panels as f64;
    let offset = h / (2.0 * 3f64.sqrt());
    (0..panels)
        .map(|i| {
            let mid = -FRAC_PI_2 + (i as f64 + 0.5) * h;
            0.5 * h * (f(mid - offset) + f(mid + offset))
        })
        .sum()
}

#[test]
fn smoothed_density_values() {
    assert!((smoothed_pdf(0.5, 32, 0.5).unwrap() - 1.0 / (2.0 * PI * 32.0)).abs() < 1e-15);
    assert!((gauss_moment(32, 0) - 1.0).abs() < 1e-9);
    assert_eq!(smoothed_moments(50, 0).unwrap(), 1.0);
    assert!((smoothed_moments(50, 1).unwrap() - 50.0).abs() < 1e-12);
    assert!((smoothed_moments(50, 2).unwrap() - 2928.932188134524).abs() < 1e-9);
    assert!((gauss_moment(50, 1) - 50.0).abs() < 1e-8);
    assert!((gauss_moment(50, 2) - 2.0 * (2.0 - SQRT_2) * 2500.0).abs() < 1e-6);
}

#[test]
fn peak_magnitude_ratio() {
    let a = peak_amplitude(10, PeakSide::Minus).unwrap();
    let b = peak_amplitude(80, PeakSide::Minus).unwrap();
    let envelope = |t: f64| qwalk::asymptotics::peak_constant() * t.powf(-1.0 / 3.0);
    assert!(a.iter().all(|z| z.norm() <= 2.0 * envelope(10.0)));
    assert!((envelope(10.0) / envelope(80.0) - 2.0).abs() < 1e-12);
    assert!(b.iter().all(|z| z.is_finite()));
}

#[test]
fn interior_amplitude_tracks_direct_engine() {
    let t = 128u64;
    let f = walk(&InitialState::SymmetricPair, t);
    let limit = (SQRT_2 * t as f64 - 2.0 * (t as f64).cbrt()) as i64;
    let (mut good, mut total) = (0, 0);
    for n in -limit..=limit {
        let approx = interior_site_amplitude(n, t).unwrap().norm_sqr();
        let exact = f.get(n).norm_sqr();
        total += 1;
        if (approx - exact).abs() <= 0.25 * exact.max(1e-12) {
            good += 1;
        }
    }
    assert!(good as f64 >= 0.9 * total as f64, "{good}/{total}");
}

#[test]
fn symmetric_spread_speed() {
    let t = 200u64;
    let m = moments(&walk(&InitialState::SymmetricPair, t), 0.5);
    let speed = m.second_moment.sqrt() / t as f64;
    let limit = (2.0 * (2.0 - SQRT_2)).sqrt();
    assert!((speed / limit - 1.0).abs() < 0.05, "{speed}");
    assert!((limit - 1.0824).abs() < 1e-4);
}

#[test]
fn absorption_front_loading_and_plateau() {
    let s = run_absorption(&InitialState::SymmetricPair, 1000).unwrap();
    assert!(s.values[2] / s.last() > 0.9);
    let est = estimate_asymptote(&s).unwrap();
    assert!((est.value - 0.4098).abs() < 5e-3);
    assert!(est.value < 2.0 / PI);
    let o = run_absorption(&InitialState::OriginDelta, 1000).unwrap();
    assert!((o.last() - 0.2732).abs() < 5e-3);
}
