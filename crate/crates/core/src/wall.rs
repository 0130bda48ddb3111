//! Absorbing wall between sites `-1` and `0`.
//!
//! After every full step `U_e U_o` the state is projected onto `n ≥ 0`. From a
//! state supported on `n ≥ 0` the only amplitude that crosses is
//! `(iψ(0) − ψ(1))/2`, arriving at `n = −1`. The surviving state is not
//! renormalized; `P_abs(t) = 1 − Σ_{n≥0} |ψ(n, t)|²`.

use serde::Serialize;

use crate::error::{Result, WalkError};
use crate::evolution::step_coinless;
use crate::state::{make_initial, AmplitudeField, Boundary, InitialState, C64};

/// Increments below this count as converged.
pub const CONVERGENCE_INCREMENT: f64 = 1e-10;

/// Number of trailing increments that must all be below the threshold.
const CONVERGENCE_WINDOW: usize = 8;

/// Wall fixed between `-1` and `0`; the projector keeps `n ≥ 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WallConfig {
    pub enabled: bool,
}

impl WallConfig {
    pub fn absorbing() -> Self {
        Self { enabled: true }
    }
}

fn check_above_wall(field: &AmplitudeField) -> Result<()> {
    if let Boundary::Circle(_) = field.boundary() {
        return Err(WalkError::CircleUnsupported("the absorbing wall"));
    }
    match field
        .sites()
        .find(|(n, a)| *n < 0 && *a != C64::new(0.0, 0.0))
    {
        Some((n, _)) => Err(WalkError::BelowWall(n)),
        None => Ok(()),
    }
}

/// One step followed by the projection onto `n ≥ 0`. Returns the probability
/// absorbed in this step.
pub fn step_with_wall(field: &mut AmplitudeField) -> Result<f64> {
    check_above_wall(field)?;
    step_coinless(field)?;
    let mut absorbed = 0.0;
    let zero = C64::new(0.0, 0.0);
    let first = field.first_site();
    for (i, a) in field.amplitudes_mut().iter_mut().enumerate() {
        if first + (i as i64) < 0 {
            absorbed += a.norm_sqr();
            *a = zero;
        }
    }
    Ok(absorbed)
}

/// `(iψ(0) − ψ(1))/2`, the amplitude one step sends to `n = −1`.
pub fn leak_amplitude(field: &AmplitudeField) -> C64 {
    (C64::new(0.0, 1.0) * field.get(0) - field.get(1)) * 0.5
}

/// Cumulative absorption probability `P_abs(t)` for `t = 0..=t_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbsorptionSeries {
    pub values: Vec<f64>,
}

impl AbsorptionSeries {
    pub fn t_max(&self) -> u64 {
        self.values.len().saturating_sub(1) as u64
    }

    pub fn last(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `(t, P_abs, P_survive)` rows.
    pub fn rows(&self) -> impl Iterator<Item = (u64, f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(t, &p)| (t as u64, p, 1.0 - p))
    }
}

/// Final state and series of a walk run against the wall.
#[derive(Clone, Debug)]
pub struct AbsorptionRun {
    pub field: AmplitudeField,
    pub series: AbsorptionSeries,
}

/// Runs `t_max` steps from `kind`, recording `1 − Σ_n |ψ(n, t)|²` after each
/// step. With the wall disabled the projector is skipped and the series stays
/// at zero up to rounding.
pub fn run_absorption_with(
    kind: &InitialState,
    t_max: u64,
    wall: WallConfig,
) -> Result<AbsorptionRun> {
    let mut field = make_initial(kind, Boundary::Line, t_max)?;
    check_above_wall(&field)?;
    let mut values = Vec::with_capacity(t_max as usize + 1);
    values.push(0.0);
    for _ in 0..t_max {
        if wall.enabled {
            step_with_wall(&mut field)?;
        } else {
            step_coinless(&mut field)?;
        }
        values.push(1.0 - field.norm_sqr());
    }
    Ok(AbsorptionRun {
        field,
        series: AbsorptionSeries { values },
    })
}

pub fn run_absorption(kind: &InitialState, t_max: u64) -> Result<AbsorptionSeries> {
    Ok(run_absorption_with(kind, t_max, WallConfig::absorbing())?.series)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoteEstimate {
    pub value: f64,
    pub converged: bool,
}

/// Last value of the series; `converged` once the trailing increments are all
/// below [`CONVERGENCE_INCREMENT`].
pub fn estimate_asymptote(series: &AbsorptionSeries) -> Result<AsymptoteEstimate> {
    let v = &series.values;
    if v.len() < 16 {
        return Err(WalkError::SeriesTooShort(v.len()));
    }
    let tail = &v[v.len() - CONVERGENCE_WINDOW - 1..];
    let converged = tail
        .windows(2)
        .all(|w| (w[1] - w[0]).abs() < CONVERGENCE_INCREMENT);
    Ok(AsymptoteEstimate {
        value: series.last(),
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_first_step_absorbs_a_quarter() {
        let mut f = make_initial(&InitialState::SymmetricPair, Boundary::Line, 2).unwrap();
        let leak = leak_amplitude(&f);
        let absorbed = step_with_wall(&mut f).unwrap();
        assert!((absorbed - 0.25).abs() < 1e-15);
        assert!((leak.norm_sqr() - absorbed).abs() < 1e-15);
        assert!(f.sites().all(|(n, a)| n >= 0 || a == C64::new(0.0, 0.0)));
    }

    #[test]
    fn leak_from_origin() {
        let f = make_initial(&InitialState::OriginDelta, Boundary::Line, 1).unwrap();
        assert_eq!(leak_amplitude(&f), C64::new(0.0, 0.5));
        let mut g = f.clone();
        assert!((step_with_wall(&mut g).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn nothing_leaks_without_amplitude_at_the_wall() {
        let far = InitialState::Custom(vec![(4, C64::new(0.6, 0.0)), (5, C64::new(0.0, 0.8))]);
        let mut f = make_initial(&far, Boundary::Line, 3).unwrap();
        assert_eq!(step_with_wall(&mut f).unwrap(), 0.0);
    }

    #[test]
    fn below_wall_is_rejected() {
        let bad = InitialState::Custom(vec![(-1, C64::new(1.0, 0.0))]);
        let mut f = make_initial(&bad, Boundary::Line, 3).unwrap();
        assert_eq!(step_with_wall(&mut f), Err(WalkError::BelowWall(-1)));
        assert!(run_absorption(&bad, 4).is_err());
        let mut ring = make_initial(&InitialState::OriginDelta, Boundary::Circle(8), 0).unwrap();
        assert!(step_with_wall(&mut ring).is_err());
    }

    #[test]
    fn short_symmetric_series() {
        let s = run_absorption(&InitialState::SymmetricPair, 2).unwrap();
        assert_eq!(s.values[0], 0.0);
        assert!((s.values[1] - 0.25).abs() < 1e-12);
        assert!((s.values[2] - 0.375).abs() < 1e-12);
    }

    #[test]
    fn disabled_wall_absorbs_nothing() {
        let run =
            run_absorption_with(&InitialState::SymmetricPair, 40, WallConfig::default()).unwrap();
        assert!(run.series.values.iter().all(|&p| p.abs() < 1e-12));
    }

    #[test]
    fn asymptote_of_constant_series() {
        let s = AbsorptionSeries {
            values: vec![0.3; 20],
        };
        assert_eq!(
            estimate_asymptote(&s).unwrap(),
            AsymptoteEstimate {
                value: 0.3,
                converged: true
            }
        );
        let short = AbsorptionSeries {
            values: vec![0.0; 10],
        };
        assert_eq!(
            estimate_asymptote(&short),
            Err(WalkError::SeriesTooShort(10))
        );
        let growing = AbsorptionSeries {
            values: (0..20).map(|i| i as f64 * 1e-3).collect(),
        };
        assert!(!estimate_asymptote(&growing).unwrap().converged);
    }

    #[test]
    fn wall_depletes_the_region_near_zero() {
        let with =
            run_absorption_with(&InitialState::SymmetricPair, 32, WallConfig::absorbing()).unwrap();
        let without =
            run_absorption_with(&InitialState::SymmetricPair, 32, WallConfig::default()).unwrap();
        let near = |f: &AmplitudeField| (0..8).map(|n| f.get(n).norm_sqr()).sum::<f64>();
        assert!(near(&with.field) < near(&without.field));
        let (_, hi) = crate::state::support_bounds(&with.field).unwrap().unwrap();
        assert!(hi <= 64);
    }
}
