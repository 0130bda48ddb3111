//! Momentum-space engine.
//!
//! With `ψ̃(k) = Σ_n e^{ikn} ψ(n)` split into its even-site and odd-site parts
//! `(ψ̃_e, ψ̃_o)`, one step of the walk is the 2×2 matrix
//!
//! ```text
//! M(k) = [[ -i e^{ik} sin k,  i cos k        ],
//!         [  i cos k,          i e^{-ik} sin k ]]
//! ```
//!
//! whose eigenvalues are `e^{±iω_k}` with `ω_k = arccos(sin² k)`.
//!
//! A finite window of `W` sites (or a ring of `W` sites) is transformed on the
//! grid `k_j = 2πj/W`. Both parts are then exact: `ψ̃_e` is π-periodic and
//! `ψ̃_o` π-antiperiodic, which `M(k + π)` respects, so the grid carries each
//! independent pair twice and the inverse transform of `ψ̃_e + ψ̃_o` returns
//! the field. On the line the window is treated as a ring; this is exact as
//! long as the support never reaches the window edges.

use std::f64::consts::{PI, TAU};

use crate::error::{Result, WalkError};
use crate::evolution::unitarity_residual;
use crate::state::{is_even_site, make_initial, AmplitudeField, Boundary, InitialState, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// `|cos k|` below this is the point `k = ±π/2` where `M` is the identity.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

/// A wavenumber reduced into `[−π, π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Wavenumber(f64);

impl Wavenumber {
    pub fn new(k: f64) -> Self {
        let r = (k + PI).rem_euclid(TAU) - PI;
        // rem_euclid can round up to exactly TAU
        Wavenumber(if r >= PI { -PI } else { r })
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<f64> for Wavenumber {
    fn from(k: f64) -> Self {
        Wavenumber::new(k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagatorM(pub [[C64; 2]; 2]);

impl PropagatorM {
    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.0)
    }

    pub fn determinant(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

pub fn propagator(k: impl Into<Wavenumber>) -> PropagatorM {
    let k = k.into().value();
    let (s, c) = k.sin_cos();
    let e = C64::from_polar(1.0, k);
    PropagatorM([[-I * e * s, I * c], [I * c, I * e.conj() * s]])
}

/// Eigen-decomposition of `M(k)`.
///
/// `omega` is the principal `arccos(sin² k)`, `lambda_plus = e^{iω}` and
/// `e_plus` is its eigenvector. Eigenvectors are unit-norm and real, with
/// the first nonzero component positive. The closed-form vectors
/// `(−sin k ± √(1 + sin² k), 1)` belong to `sin² k ± i cos k √(1 + sin² k)`,
/// which is `e^{±iω}` for `cos k ≥ 0` and `e^{∓iω}` otherwise; the labels
/// are swapped accordingly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem {
    pub k: f64,
    pub omega: f64,
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    pub e_plus: [C64; 2],
    pub e_minus: [C64; 2],
    pub degenerate: bool,
}

fn unit_real(x: f64, y: f64) -> [C64; 2] {
    let norm = x.hypot(y);
    let sign = if x != 0.0 { x.signum() } else { y.signum() };
    [
        C64::new(sign * x / norm, 0.0),
        C64::new(sign * y / norm, 0.0),
    ]
}

pub fn eigensystem(k: impl Into<Wavenumber>) -> EigenSystem {
    let k = k.into().value();
    let (s, c) = k.sin_cos();
    if c.abs() < DEGENERACY_THRESHOLD {
        let one = C64::new(1.0, 0.0);
        return EigenSystem {
            k,
            omega: 0.0,
            lambda_plus: one,
            lambda_minus: one,
            e_plus: [one, ZERO],
            e_minus: [ZERO, one],
            degenerate: true,
        };
    }
    let omega = (s * s).min(1.0).acos();
    let r = (1.0 + s * s).sqrt();
    let formula_plus = unit_real(r - s, 1.0);
    let formula_minus = unit_real(-r - s, 1.0);
    let (e_plus, e_minus) = if c >= 0.0 {
        (formula_plus, formula_minus)
    } else {
        (formula_minus, formula_plus)
    };
    EigenSystem {
        k,
        omega,
        lambda_plus: C64::from_polar(1.0, omega),
        lambda_minus: C64::from_polar(1.0, -omega),
        e_plus,
        e_minus,
        degenerate: false,
    }
}

fn inner(a: [C64; 2], b: [C64; 2]) -> C64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

fn scale(v: [C64; 2], s: C64) -> [C64; 2] {
    [v[0] * s, v[1] * s]
}

fn add(a: [C64; 2], b: [C64; 2]) -> [C64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

impl EigenSystem {
    /// Components of `v` along `e_plus` and `e_minus`, `(P₊v, P₋v)`.
    ///
    /// At the degenerate point every vector is an eigenvector; the split is
    /// along the standard basis.
    pub fn project(&self, v: [C64; 2]) -> ([C64; 2], [C64; 2]) {
        (
            scale(self.e_plus, inner(self.e_plus, v)),
            scale(self.e_minus, inner(self.e_minus, v)),
        )
    }

    /// `M(k)^t v = e^{iωt} P₊v + e^{−iωt} P₋v`
    pub fn evolve(&self, v: [C64; 2], t: u64) -> [C64; 2] {
        if self.degenerate {
            return v;
        }
        let (plus, minus) = self.project(v);
        let phase = self.omega * t as f64;
        add(
            scale(plus, C64::from_polar(1.0, phase)),
            scale(minus, C64::from_polar(1.0, -phase)),
        )
    }
}

/// Two-component transform of a field on the grid `k_j = 2πj/W`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    boundary: Boundary,
    first_site: i64,
    sites: usize,
    time: u64,
    /// `(ψ̃_e(k_j), ψ̃_o(k_j))`
    pub components: Vec<[C64; 2]>,
    /// Projections `(P₊ψ̃, P₋ψ̃)` per grid point, once computed.
    pub projections: Option<Vec<([C64; 2], [C64; 2])>>,
}

impl SpectralField {
    pub fn len(&self) -> usize {
        self.sites
    }

    pub fn is_empty(&self) -> bool {
        self.sites == 0
    }

    pub fn wavenumber(&self, j: usize) -> Wavenumber {
        Wavenumber::new(TAU * j as f64 / self.sites as f64)
    }

    pub fn wavenumbers(&self) -> Vec<Wavenumber> {
        (0..self.sites).map(|j| self.wavenumber(j)).collect()
    }

    /// `Σ_k ‖ψ̃(k)‖² / W`, equal to the position-space squared norm.
    pub fn parseval_norm_sqr(&self) -> f64 {
        self.components
            .iter()
            .map(|v| v[0].norm_sqr() + v[1].norm_sqr())
            .sum::<f64>()
            / self.sites as f64
    }

    /// Fills [`SpectralField::projections`] by eigenvector inner products.
    pub fn project(&mut self) {
        let proj = (0..self.sites)
            .map(|j| eigensystem(self.wavenumber(j)).project(self.components[j]))
            .collect();
        self.projections = Some(proj);
    }

    /// Applies `M(k)^t` at every grid point.
    pub fn advance(&mut self, t: u64) {
        for j in 0..self.sites {
            let es = eigensystem(self.wavenumber(j));
            self.components[j] = es.evolve(self.components[j], t);
        }
        self.projections = None;
        self.time += t;
    }
}

/// `e^{i 2π m / W}` for `m = 0..W`, indexed by `(j·n) mod W`.
fn twiddles(sites: usize) -> Vec<C64> {
    (0..sites)
        .map(|m| C64::from_polar(1.0, TAU * m as f64 / sites as f64))
        .collect()
}

fn phase_index(j: usize, n: i64, sites: usize) -> usize {
    ((j as i128 * n as i128).rem_euclid(sites as i128)) as usize
}

pub fn forward_transform(field: &AmplitudeField) -> SpectralField {
    let sites = field.len();
    let tw = twiddles(sites);
    let nonzero: Vec<(i64, C64)> = field.sites().filter(|(_, a)| *a != ZERO).collect();
    let components = (0..sites)
        .map(|j| {
            let mut v = [ZERO, ZERO];
            for &(n, a) in &nonzero {
                let slot = if is_even_site(n) { 0 } else { 1 };
                v[slot] += tw[phase_index(j, n, sites)] * a;
            }
            v
        })
        .collect();
    SpectralField {
        boundary: field.boundary(),
        first_site: field.first_site(),
        sites,
        time: field.time(),
        components,
        projections: None,
    }
}

pub fn inverse_transform(spectral: &SpectralField) -> AmplitudeField {
    let sites = spectral.sites;
    let tw = twiddles(sites);
    let mut field = match spectral.boundary {
        Boundary::Line => {
            AmplitudeField::zeros_line(spectral.first_site, spectral.first_site + sites as i64 - 1)
        }
        Boundary::Circle(size) => {
            AmplitudeField::zeros_circle(size).expect("ring size validated with the source field")
        }
    };
    let totals: Vec<C64> = spectral.components.iter().map(|v| v[0] + v[1]).collect();
    let scale = 1.0 / sites as f64;
    let first = field.first_site();
    for (i, amp) in field.amplitudes_mut().iter_mut().enumerate() {
        let n = first + i as i64;
        let mut acc = ZERO;
        for (j, total) in totals.iter().enumerate() {
            acc += tw[phase_index(j, n, sites)].conj() * total;
        }
        *amp = acc * scale;
    }
    field.set_time(spectral.time);
    field
}

/// Closed-form `(ψ̃₊(k, 0), ψ̃₋(k, 0))` for the two canonical initial states,
/// labeled as in [`EigenSystem`]. `None` for custom states.
pub fn closed_form_projection(
    kind: &InitialState,
    k: impl Into<Wavenumber>,
) -> Option<([C64; 2], [C64; 2])> {
    let k = k.into().value();
    let (s, c) = k.sin_cos();
    let r = (1.0 + s * s).sqrt();
    let e = C64::from_polar(1.0, k);
    let (plus, minus) = match kind {
        InitialState::OriginDelta => {
            let pre = 1.0 / (2.0 * r);
            (
                [C64::new(pre * (r - s), 0.0), C64::new(pre, 0.0)],
                [C64::new(pre * (s + r), 0.0), C64::new(-pre, 0.0)],
            )
        }
        InitialState::SymmetricPair => {
            let pre = 1.0 / (2.0 * (2.0 * (1.0 + s * s)).sqrt());
            (
                [(e - s + r) * pre, (1.0 + e * s + e * r) * pre],
                [-(e - s - r) * pre, -(1.0 + e * s - e * r) * pre],
            )
        }
        InitialState::Custom(_) => return None,
    };
    if c.abs() < DEGENERACY_THRESHOLD {
        // M is the identity; split along the standard basis instead
        let v = add(plus, minus);
        return Some(([v[0], ZERO], [ZERO, v[1]]));
    }
    Some(if c >= 0.0 {
        (plus, minus)
    } else {
        (minus, plus)
    })
}

/// Transform of the `t = 0` state on a `grid_sites` window, with projections filled.
pub fn project_initial(kind: &InitialState, grid_sites: usize) -> Result<SpectralField> {
    let field = centered_initial(kind, grid_sites)?;
    let mut spectral = forward_transform(&field);
    spectral.project();
    Ok(spectral)
}

fn centered_initial(kind: &InitialState, grid_sites: usize) -> Result<AmplitudeField> {
    if grid_sites == 0 || !grid_sites.is_multiple_of(2) {
        return Err(WalkError::OddGrid(grid_sites));
    }
    let field = make_initial(kind, Boundary::Line, 0)?;
    let (lo, hi) = crate::state::support_bounds(&field)?.unwrap_or((0, 0));
    let mid_cell = (lo + hi).div_euclid(4);
    let first = 2 * (mid_cell - grid_sites as i64 / 4);
    field.rewindowed(first, first + grid_sites as i64 - 1)
}

/// Sites a window needs so that `t` steps from `field` never wrap.
pub fn required_sites(field: &AmplitudeField, t: u64) -> Result<usize> {
    let (lo, hi) = crate::state::support_bounds(field)?.unwrap_or((0, 0));
    let cells = hi.div_euclid(2) - lo.div_euclid(2) + 1;
    Ok(2 * (cells as usize + 2 * t as usize))
}

/// `ψ(n, t)` for a canonical or custom initial state, by diagonalization on a
/// window of `grid_sites` sites.
pub fn evolve_spectral(kind: &InitialState, t: u64, grid_sites: usize) -> Result<AmplitudeField> {
    let field = centered_initial(kind, grid_sites)?;
    evolve_field_spectral(&field, t)
}

/// Evolves `field` by `t` steps in momentum space, on its own window (line)
/// or ring (circle).
pub fn evolve_field_spectral(field: &AmplitudeField, t: u64) -> Result<AmplitudeField> {
    if field.boundary() == Boundary::Line {
        let required = required_sites(field, t)?;
        if field.len() < required {
            return Err(WalkError::GridTooSmall {
                required,
                given: field.len(),
            });
        }
        let (lo, _) = crate::state::support_bounds(field)?.unwrap_or((0, 0));
        // shift the window so the support has t free cells on its left
        let first = 2 * (lo.div_euclid(2) - t as i64);
        let padded = field.rewindowed(first, first + field.len() as i64 - 1)?;
        let mut spectral = forward_transform(&padded);
        spectral.advance(t);
        return Ok(inverse_transform(&spectral));
    }
    let mut spectral = forward_transform(field);
    spectral.advance(t);
    Ok(inverse_transform(&spectral))
}
