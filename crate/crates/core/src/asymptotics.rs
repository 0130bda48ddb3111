//! Long-time behaviour of the symmetric walk by stationary phase.
//!
//! The amplitude is a sum of integrals `∫ dk/2π g(k) e^{iφ(k, n, t)}` with
//! `φ = −kn ± ω_k t` and a bounded `g(k)`. Where `|n| < √2·t` there are two
//! stationary points and the amplitude decays like `t^{−1/2}`; at `|n| = √2·t`
//! the stationary point is of second order and the decay is `t^{−1/3}`;
//! beyond it the walk falls off faster than any power.
//!
//! Everything here is closed form. Arguments are raw site labels unless a
//! `center` is taken; the symmetric walk's distribution is symmetric about
//! `n = 1/2`, so smoothed comparisons shift by that center.

use serde::Serialize;
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use crate::error::{Result, WalkError};
use crate::state::{is_even_site, C64};

pub const DEFAULT_BAND_COEFFICIENT: f64 = 1.0;

/// `ω(k)` and its first three derivatives.
///
/// `omega` is the smooth branch `sgn(cos k)·arccos(sin² k)`, equal to the
/// principal value for `|k| ≤ π/2`; the derivatives below are those of this
/// branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dispersion {
    pub omega: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

pub fn dispersion_omega(k: f64) -> f64 {
    let (s, c) = k.sin_cos();
    (c * (1.0 + s * s).sqrt()).atan2(s * s)
}

pub fn dispersion_derivatives(k: f64) -> Dispersion {
    let (s, c) = k.sin_cos();
    let q = 1.0 + s * s;
    Dispersion {
        omega: dispersion_omega(k),
        d1: -2.0 * s / q.sqrt(),
        d2: -2.0 * c / q.powf(1.5),
        d3: 4.0 * s * (1.0 + c * c) / q.powf(2.5),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionClass {
    /// `|n| > √2·t + band`: no stationary point.
    Outer,
    /// Within `band` of `±√2·t`.
    Peak,
    /// `|n| < √2·t − band`: two stationary points.
    Interior,
}

/// Half-width of the peak region, `coefficient · t^{1/3}`.
pub fn peak_band(t: u64, band_coefficient: f64) -> f64 {
    band_coefficient * (t as f64).cbrt()
}

pub fn classify(n: f64, t: u64, band_coefficient: f64) -> Result<RegionClass> {
    if t == 0 {
        return Err(WalkError::ZeroTime);
    }
    let edge = SQRT_2 * t as f64;
    let band = peak_band(t, band_coefficient);
    let offset = n.abs() - edge;
    Ok(if offset > band {
        RegionClass::Outer
    } else if offset < -band {
        RegionClass::Interior
    } else {
        RegionClass::Peak
    })
}

/// Stationary points of `φ(k) = −kn + ω_k t` for `|n| < √2·t`.
///
/// `sin k₀₁ = −n/√(4t² − n²)` with `k₀₁ ∈ (−π/2, π/2)` and `k₀₂ = π − k₀₁`.
/// The points of the other branch, `φ = −kn − ω_k t`, are their negatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryPoints {
    pub alpha: f64,
    pub k01: f64,
    pub k02: f64,
}

impl StationaryPoints {
    /// Largest `|t·ω'(k₀) − n|` over both points, in units of sites.
    pub fn residual(&self, t: u64) -> f64 {
        let n = self.alpha * t as f64;
        [self.k01, self.k02]
            .iter()
            .map(|&k| (dispersion_derivatives(k).d1 * t as f64 - n).abs())
            .fold(0.0, f64::max)
    }
}

pub fn stationary_points(n: f64, t: u64) -> Result<StationaryPoints> {
    if t == 0 {
        return Err(WalkError::ZeroTime);
    }
    let tf = t as f64;
    if n.abs() >= SQRT_2 * tf {
        return Err(WalkError::NoStationaryPoint { n, t });
    }
    let sin_k = (-n / (4.0 * tf * tf - n * n).sqrt()).clamp(-1.0, 1.0);
    let k01 = sin_k.asin();
    Ok(StationaryPoints {
        alpha: n / tf,
        k01,
        k02: PI - k01,
    })
}

/// Smoothed probability density `4t² / (π √(4t² − 2x²) (4t² − x²))` of the
/// walk at time `t`, with `x = n − center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothedPdf {
    pub t: u64,
    pub center: f64,
}

impl SmoothedPdf {
    pub fn new(t: u64, center: f64) -> Result<Self> {
        if t == 0 {
            return Err(WalkError::ZeroTime);
        }
        Ok(Self { t, center })
    }

    /// Edge of the support, `√2·t`, measured from the center.
    pub fn half_width(&self) -> f64 {
        SQRT_2 * self.t as f64
    }

    /// Density at `n`; zero outside the open interval `|n − center| < √2·t`.
    pub fn density(&self, n: f64) -> f64 {
        let x = n - self.center;
        let a = 4.0 * (self.t as f64).powi(2);
        let b = a - 2.0 * x * x;
        if b <= 0.0 {
            return 0.0;
        }
        a / (PI * b.sqrt() * (a - x * x))
    }

    /// Closed-form cumulative probability, `1/2 + atan(x/√(4t² − 2x²))/π`.
    pub fn cdf(&self, n: f64) -> f64 {
        let x = n - self.center;
        let a = 4.0 * (self.t as f64).powi(2);
        let b = a - 2.0 * x * x;
        if b <= 0.0 {
            return if x > 0.0 { 1.0 } else { 0.0 };
        }
        0.5 + (x / b.sqrt()).atan() / PI
    }
}

/// Smoothed density at `n`, failing at or beyond the singular edges.
pub fn smoothed_pdf(n: f64, t: u64, center: f64) -> Result<f64> {
    let pdf = SmoothedPdf::new(t, center)?;
    let arg = n - center;
    if arg.abs() >= pdf.half_width() {
        return Err(WalkError::OutsideInterior { arg, t });
    }
    Ok(pdf.density(n))
}

/// `∫ |x|^order · density dx` for order 0, 1, 2: `1`, `t`, `2(2 − √2)t²`.
pub fn smoothed_moments(t: u64, order: u32) -> Result<f64> {
    if t == 0 {
        return Err(WalkError::ZeroTime);
    }
    let tf = t as f64;
    match order {
        0 => Ok(1.0),
        1 => Ok(tf),
        2 => Ok(2.0 * (2.0 - SQRT_2) * tf * tf),
        other => Err(WalkError::UnsupportedOrder(other)),
    }
}

/// `c = Γ(1/3) / (2π·3^{1/6}) ≈ 0.355`
pub fn peak_constant() -> f64 {
    libm::tgamma(1.0 / 3.0) / (2.0 * PI * 3f64.powf(1.0 / 6.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PeakSide {
    Plus,
    Minus,
}

/// Two-component amplitude at `n = ±√2·t`:
/// `c t^{−1/3} ((1 ± w) cos(πt/√2), (±1 − w) sin(πt/√2))` with `w = (1 − i)/√2`.
pub fn peak_amplitude(t: u64, side: PeakSide) -> Result<[C64; 2]> {
    if t == 0 {
        return Err(WalkError::ZeroTime);
    }
    let tf = t as f64;
    let scale = peak_constant() * tf.powf(-1.0 / 3.0);
    let w = C64::new(1.0, -1.0) / SQRT_2;
    let one = C64::new(1.0, 0.0);
    let arg = PI * tf / SQRT_2;
    let (upper, lower) = match side {
        PeakSide::Plus => (one + w, one - w),
        PeakSide::Minus => (one - w, -one - w),
    };
    Ok([upper * arg.cos() * scale, lower * arg.sin() * scale])
}

/// Stationary-phase amplitude of the symmetric walk for `|n| < √2·t`.
///
/// Returns `(ψ_e, ψ_o)`: the first component approximates `ψ(n, t)` at even
/// `n`, the second at odd `n`. The prefactor is `1/(√π (4t² − 2n²)^{1/4})`,
/// which makes the oscillation-averaged probability equal to the smoothed
/// density; accuracy degrades within `O(t^{1/3})` of the peaks.
pub fn interior_amplitude(n: f64, t: u64) -> Result<[C64; 2]> {
    let points = stationary_points(n, t)?;
    let tf = t as f64;
    let a = 4.0 * tf * tf;
    let root_outer = (a - n * n).sqrt();
    let root_inner = (a - 2.0 * n * n).sqrt();
    let phase = -points.k01 * n + dispersion_omega(points.k01) * tf - FRAC_PI_4;
    let prefactor = 1.0 / (PI.sqrt() * root_inner.sqrt());
    let w = C64::new(n + 2.0 * tf, -n); // (1 − i)n + 2t
    let cos = C64::new(phase.cos(), 0.0);
    let isin = C64::new(0.0, phase.sin());
    Ok([
        (cos * w / root_outer + isin * root_inner / root_outer) * prefactor,
        (cos * root_inner / (2.0 * tf + n) + isin * w / (2.0 * tf + n)) * prefactor,
    ])
}

/// [`interior_amplitude`] at an integer site, picking the component by parity.
pub fn interior_site_amplitude(n: i64, t: u64) -> Result<C64> {
    let v = interior_amplitude(n as f64, t)?;
    Ok(if is_even_site(n) { v[0] } else { v[1] })
}
