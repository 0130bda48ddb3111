//! Amplitude storage, initial states and the observables computed from them.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Result, WalkError};

pub type C64 = Complex64;

/// Tolerance on the squared norm of user-supplied states.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Infinite line, stored on a finite window that always covers the support.
    Line,
    /// Periodic ring of `N` sites, `N` even.
    Circle(usize),
}

impl Boundary {
    pub fn validate(self) -> Result<()> {
        match self {
            Boundary::Line => Ok(()),
            Boundary::Circle(n) if n % 2 != 0 => Err(WalkError::OddCircle(n)),
            Boundary::Circle(n) if n < 4 => Err(WalkError::CircleTooSmall(n)),
            Boundary::Circle(_) => Ok(()),
        }
    }
}

/// `true` for even site labels, including negative ones.
#[inline]
pub fn is_even_site(n: i64) -> bool {
    n.rem_euclid(2) == 0
}

#[derive(Clone, Debug, PartialEq)]
pub enum InitialState {
    /// `ψ(n, 0) = δ_{n,0}`
    OriginDelta,
    /// `ψ(n, 0) = (δ_{n,0} + δ_{n,1}) / √2`
    SymmetricPair,
    Custom(Vec<(i64, C64)>),
}

impl InitialState {
    pub fn amplitudes(&self) -> Vec<(i64, C64)> {
        match self {
            InitialState::OriginDelta => vec![(0, C64::new(1.0, 0.0))],
            InitialState::SymmetricPair => vec![
                (0, C64::new(FRAC_1_SQRT_2, 0.0)),
                (1, C64::new(FRAC_1_SQRT_2, 0.0)),
            ],
            InitialState::Custom(v) => v.clone(),
        }
    }

    /// Natural symmetry center for moments: 0 for the origin walk, 1/2 for
    /// the symmetric pair.
    pub fn center(&self) -> f64 {
        match self {
            InitialState::SymmetricPair => 0.5,
            _ => 0.0,
        }
    }
}

/// Complex amplitudes over a window of the line or over a whole ring.
///
/// On the line the window `[first_site, first_site + len)` always starts on an
/// even label and has even length, so it is tiled exactly by the `(2m, 2m+1)`
/// pairs. Parity is always taken from the absolute site label.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeField {
    boundary: Boundary,
    first_site: i64,
    amps: Vec<C64>,
    time: u64,
}

impl AmplitudeField {
    /// All-zero field on the line covering at least `[lo, hi]`.
    pub fn zeros_line(lo: i64, hi: i64) -> Self {
        let lo = lo.min(hi);
        let first = lo - lo.rem_euclid(2);
        let last = if is_even_site(hi) { hi + 1 } else { hi };
        let len = (last - first + 1) as usize;
        Self {
            boundary: Boundary::Line,
            first_site: first,
            amps: vec![C64::new(0.0, 0.0); len],
            time: 0,
        }
    }

    pub fn zeros_circle(n: usize) -> Result<Self> {
        Boundary::Circle(n).validate()?;
        Ok(Self {
            boundary: Boundary::Circle(n),
            first_site: 0,
            amps: vec![C64::new(0.0, 0.0); n],
            time: 0,
        })
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn set_time(&mut self, time: u64) {
        self.time = time;
    }

    pub fn first_site(&self) -> i64 {
        self.first_site
    }

    pub fn last_site(&self) -> i64 {
        self.first_site + self.amps.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    /// Storage position of site `n`, if stored. On the circle labels wrap.
    pub fn index_of(&self, n: i64) -> Option<usize> {
        match self.boundary {
            Boundary::Line => {
                let i = n - self.first_site;
                (0..self.amps.len() as i64)
                    .contains(&i)
                    .then_some(i as usize)
            }
            Boundary::Circle(size) => Some(n.rem_euclid(size as i64) as usize),
        }
    }

    /// Amplitude at site `n`; zero outside the line window.
    pub fn get(&self, n: i64) -> C64 {
        self.index_of(n)
            .map_or(C64::new(0.0, 0.0), |i| self.amps[i])
    }

    pub fn set(&mut self, n: i64, value: C64) -> Result<()> {
        let i = self.index_of(n).ok_or(WalkError::SiteOutsideWindow(n))?;
        self.amps[i] = value;
        Ok(())
    }

    /// `(site, amplitude)` for every stored site, in increasing label order.
    pub fn sites(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        let first = self.first_site;
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, a)| (first + i as i64, *a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest componentwise modulus of the difference, matching sites by label.
    pub fn max_abs_diff(&self, other: &AmplitudeField) -> f64 {
        let lo = self.first_site.min(other.first_site);
        let hi = self.last_site().max(other.last_site());
        (lo..=hi)
            .map(|n| (self.get(n) - other.get(n)).norm())
            .fold(0.0, f64::max)
    }

    /// Copy of this field re-stored on a line window covering at least `[lo, hi]`.
    pub fn rewindowed(&self, lo: i64, hi: i64) -> Result<Self> {
        if self.boundary != Boundary::Line {
            return Err(WalkError::CircleUnsupported("re-windowing"));
        }
        let mut out = Self::zeros_line(lo, hi);
        out.time = self.time;
        for (n, a) in self.sites() {
            if a != C64::new(0.0, 0.0) {
                out.set(n, a)?;
            }
        }
        Ok(out)
    }
}

/// Builds the `t = 0` field for `kind`.
///
/// On the line the window spans the initial support widened by `2·t_max + 2`
/// sites on each side, rounded out to whole `(2m, 2m+1)` pairs.
pub fn make_initial(kind: &InitialState, boundary: Boundary, t_max: u64) -> Result<AmplitudeField> {
    boundary.validate()?;
    let entries = kind.amplitudes();
    if entries.is_empty() {
        return Err(WalkError::EmptyState);
    }
    let mut seen = std::collections::BTreeSet::new();
    for (n, a) in &entries {
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(WalkError::NonFinite(*n));
        }
        let key = match boundary {
            Boundary::Line => *n,
            Boundary::Circle(size) => n.rem_euclid(size as i64),
        };
        if !seen.insert(key) {
            return Err(WalkError::DuplicateSite(*n));
        }
    }
    let norm_sqr: f64 = entries.iter().map(|(_, a)| a.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
        return Err(WalkError::NotNormalized { norm_sqr });
    }

    let mut field = match boundary {
        Boundary::Line => {
            let lo = entries.iter().map(|e| e.0).min().unwrap_or(0);
            let hi = entries.iter().map(|e| e.0).max().unwrap_or(0);
            let margin = 2 * t_max as i64 + 2;
            AmplitudeField::zeros_line(lo - margin, hi + margin)
        }
        Boundary::Circle(size) => AmplitudeField::zeros_circle(size)?,
    };
    for (n, a) in entries {
        field.set(n, a)?;
    }
    Ok(field)
}

/// `|ψ(n)|²` for every stored site (zeros included), in label order.
pub fn probability_distribution(field: &AmplitudeField) -> Vec<(i64, f64)> {
    field.sites().map(|(n, a)| (n, a.norm_sqr())).collect()
}

/// Smallest and largest label with nonzero amplitude; `None` for the zero field.
pub fn support_bounds(field: &AmplitudeField) -> Result<Option<(i64, i64)>> {
    if let Boundary::Circle(_) = field.boundary() {
        return Err(WalkError::CircleUnsupported("support bounds"));
    }
    let mut nonzero = field
        .sites()
        .filter(|(_, a)| *a != C64::new(0.0, 0.0))
        .map(|(n, _)| n);
    Ok(nonzero.next().map(|lo| (lo, nonzero.last().unwrap_or(lo))))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub total_probability: f64,
    pub abs_first_moment: f64,
    pub second_moment: f64,
    pub center: f64,
}

/// Zeroth, absolute first and second moments of `|ψ|²` about `center`.
pub fn moments(field: &AmplitudeField, center: f64) -> MomentReport {
    moments_of(field.sites().map(|(n, a)| (n, a.norm_sqr())), center)
}

pub(crate) fn moments_of(probs: impl Iterator<Item = (i64, f64)>, center: f64) -> MomentReport {
    let mut report = MomentReport {
        total_probability: 0.0,
        abs_first_moment: 0.0,
        second_moment: 0.0,
        center,
    };
    for (n, p) in probs {
        let x = n as f64 - center;
        report.total_probability += p;
        report.abs_first_moment += x.abs() * p;
        report.second_moment += x * x * p;
    }
    report
}

/// Pairs of sites `Ψ(N) = (ψ(2N), ψ(2N+1))`, the coined-walk view of a field.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoComponentField {
    boundary: Boundary,
    first_cell: i64,
    cells: Vec<[C64; 2]>,
    time: u64,
}

impl TwoComponentField {
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn first_cell(&self) -> i64 {
        self.first_cell
    }

    pub fn cells(&self) -> &[[C64; 2]] {
        &self.cells
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [[C64; 2]] {
        &mut self.cells
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub(crate) fn set_time(&mut self, time: u64) {
        self.time = time;
    }

    pub fn cell(&self, index: i64) -> [C64; 2] {
        let zero = C64::new(0.0, 0.0);
        match self.boundary {
            Boundary::Line => {
                let i = index - self.first_cell;
                if (0..self.cells.len() as i64).contains(&i) {
                    self.cells[i as usize]
                } else {
                    [zero, zero]
                }
            }
            Boundary::Circle(_) => self.cells[index.rem_euclid(self.cells.len() as i64) as usize],
        }
    }

    /// Number of cells, half the number of sites.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Groups sites into cells. Lossless: windows are always pair-aligned.
pub fn pack(field: &AmplitudeField) -> TwoComponentField {
    debug_assert!(is_even_site(field.first_site()) && field.len().is_multiple_of(2));
    TwoComponentField {
        boundary: field.boundary(),
        first_cell: field.first_site().div_euclid(2),
        cells: field
            .amplitudes()
            .chunks_exact(2)
            .map(|c| [c[0], c[1]])
            .collect(),
        time: field.time(),
    }
}

pub fn unpack(cells: &TwoComponentField) -> AmplitudeField {
    AmplitudeField {
        boundary: cells.boundary,
        first_site: 2 * cells.first_cell,
        amps: cells.cells.iter().flat_map(|c| c.iter().copied()).collect(),
        time: cells.time,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn origin_delta_has_unit_amplitude_at_zero() {
        let f = make_initial(&InitialState::OriginDelta, Boundary::Line, 4).unwrap();
        assert_eq!(f.get(0), c(1.0, 0.0));
        let nonzero: Vec<_> = probability_distribution(&f)
            .into_iter()
            .filter(|(_, p)| *p > 0.0)
            .collect();
        assert_eq!(nonzero, vec![(0, 1.0)]);
        // window [-2t-2, 2t+2] rounded out to whole pairs
        assert_eq!(f.first_site(), -10);
        assert_eq!(f.last_site(), 11);
    }

    #[test]
    fn symmetric_pair_amplitudes() {
        let f = make_initial(&InitialState::SymmetricPair, Boundary::Line, 0).unwrap();
        assert_eq!(f.get(0), c(FRAC_1_SQRT_2, 0.0));
        assert_eq!(f.get(1), c(FRAC_1_SQRT_2, 0.0));
        assert!((f.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn custom_state_validation() {
        let ok = InitialState::Custom(vec![(0, c(0.6, 0.0)), (1, c(0.0, 0.8))]);
        let f = make_initial(&ok, Boundary::Line, 2).unwrap();
        assert!((f.norm_sqr() - 1.0).abs() < 1e-15);

        let bad = InitialState::Custom(vec![(0, c(0.6, 0.0))]);
        match make_initial(&bad, Boundary::Line, 2) {
            Err(WalkError::NotNormalized { norm_sqr }) => assert!((norm_sqr - 0.36).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        let nan = InitialState::Custom(vec![(3, c(f64::NAN, 0.0))]);
        assert_eq!(
            make_initial(&nan, Boundary::Line, 2),
            Err(WalkError::NonFinite(3))
        );
        let dup = InitialState::Custom(vec![(2, c(0.6, 0.0)), (2, c(0.8, 0.0))]);
        assert_eq!(
            make_initial(&dup, Boundary::Line, 2),
            Err(WalkError::DuplicateSite(2))
        );
        assert_eq!(
            make_initial(&InitialState::Custom(vec![]), Boundary::Line, 2),
            Err(WalkError::EmptyState)
        );
    }

    #[test]
    fn circle_rejects_odd_and_tiny_rings() {
        assert_eq!(
            make_initial(&InitialState::OriginDelta, Boundary::Circle(7), 1),
            Err(WalkError::OddCircle(7))
        );
        assert_eq!(
            make_initial(&InitialState::OriginDelta, Boundary::Circle(2), 1),
            Err(WalkError::CircleTooSmall(2))
        );
        let f = make_initial(&InitialState::SymmetricPair, Boundary::Circle(4), 1).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.get(5), f.get(1));
        let wrap = InitialState::Custom(vec![(-1, c(0.6, 0.0)), (3, c(0.8, 0.0))]);
        assert_eq!(
            make_initial(&wrap, Boundary::Circle(4), 1),
            Err(WalkError::DuplicateSite(3))
        );
    }

    #[test]
    fn odd_offset_windows_round_out_to_pairs() {
        let f = AmplitudeField::zeros_line(-3, 4);
        assert_eq!((f.first_site(), f.last_site()), (-4, 5));
        let custom = InitialState::Custom(vec![(-7, c(1.0, 0.0))]);
        let f = make_initial(&custom, Boundary::Line, 0).unwrap();
        assert!(is_even_site(f.first_site()));
        assert_eq!(f.len() % 2, 0);
        assert!(!is_even_site(-7));
        assert!(is_even_site(-8));
    }

    #[test]
    fn support_bounds_cases() {
        let f = make_initial(&InitialState::OriginDelta, Boundary::Line, 3).unwrap();
        assert_eq!(support_bounds(&f).unwrap(), Some((0, 0)));
        let z = AmplitudeField::zeros_line(0, 3);
        assert_eq!(support_bounds(&z).unwrap(), None);
        let ring = AmplitudeField::zeros_circle(8).unwrap();
        assert!(support_bounds(&ring).is_err());
    }

    #[test]
    fn moments_at_origin() {
        let f = make_initial(&InitialState::OriginDelta, Boundary::Line, 3).unwrap();
        let m = moments(&f, 0.0);
        assert_eq!(
            (m.total_probability, m.abs_first_moment, m.second_moment),
            (1.0, 0.0, 0.0)
        );
        let s = make_initial(&InitialState::SymmetricPair, Boundary::Line, 3).unwrap();
        let m = moments(&s, 0.5);
        assert!((m.abs_first_moment - 0.5).abs() < 1e-15);
        assert!((m.second_moment - 0.25).abs() < 1e-15);
    }

    #[test]
    fn pack_cells() {
        let f = make_initial(&InitialState::OriginDelta, Boundary::Line, 1).unwrap();
        let p = pack(&f);
        assert_eq!(p.cell(0), [c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.len() * 2, f.len());

        let ab = InitialState::Custom(vec![(2, c(0.6, 0.0)), (3, c(0.0, 0.8))]);
        let f = make_initial(&ab, Boundary::Line, 1).unwrap();
        assert_eq!(pack(&f).cell(1), [c(0.6, 0.0), c(0.0, 0.8)]);
        assert_eq!(unpack(&pack(&f)), f);
    }
}
