//! Position-space engines.
//!
//! The coinless step is `U_e U_o`: `U_o` mixes the pairs `(2m, 2m+1)` and
//! then `U_e` mixes `(2m+1, 2m+2)`, both with the block
//! `(1/√2)·[[1, i], [i, 1]]`. Reversing the order gives the mirror walk, so the
//! order is part of the contract.
//!
//! The coined flip-flop walk works on [`TwoComponentField`] cells and is the
//! same dynamics written with a coin `C` and a conditional shift; it is kept
//! as an independent code path so the two can be checked against each other.

use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use crate::error::{Result, WalkError};
use crate::state::{pack, unpack, AmplitudeField, Boundary, TwoComponentField, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Which sites a half-step couples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `(2m, 2m+1)`, used by `U_o`.
    OddPairs,
    /// `(2m+1, 2m+2)`, used by `U_e`.
    EvenPairs,
}

/// The constant 2×2 block of both half-steps, `(1/√2)·[[1, i], [i, 1]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfStepBlock;

impl HalfStepBlock {
    pub fn matrix() -> [[C64; 2]; 2] {
        let s = FRAC_1_SQRT_2;
        [
            [C64::new(s, 0.0), C64::new(0.0, s)],
            [C64::new(0.0, s), C64::new(s, 0.0)],
        ]
    }

    /// `(a, b) -> ((a + i b)/√2, (i a + b)/√2)`
    #[inline]
    pub fn mix(a: C64, b: C64) -> (C64, C64) {
        let s = FRAC_1_SQRT_2;
        (
            C64::new(a.re - b.im, a.im + b.re) * s,
            C64::new(b.re - a.im, b.im + a.re) * s,
        )
    }

    /// [`HalfStepBlock::mix`] dividing by `√2` instead of multiplying by
    /// `1/√2`. The two constants round in opposite directions, so alternating
    /// them keeps the norm from drifting over long runs.
    #[inline]
    pub fn mix_div(a: C64, b: C64) -> (C64, C64) {
        (
            C64::new(a.re - b.im, a.im + b.re) / SQRT_2,
            C64::new(b.re - a.im, b.im + a.re) / SQRT_2,
        )
    }
}

/// The flip-flop walk's coin, `C = (1/√2)·[[1, i], [i, 1]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix(pub [[C64; 2]; 2]);

impl Default for CoinMatrix {
    fn default() -> Self {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        CoinMatrix([[s, I * s], [I * s, s]])
    }
}

impl CoinMatrix {
    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }
}

/// Largest entry of `|B·B† − 1|` for a 2×2 matrix.
pub fn unitarity_residual(m: &[[C64; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            let dot = m[r][0] * m[c][0].conj() + m[r][1] * m[c][1].conj();
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    CoinlessStaggered,
    CoinedFlipFlop,
    ClassicalSymmetric,
}

fn apply_pairs(field: &mut AmplitudeField, pairing: Pairing) -> Result<()> {
    let time = field.time();
    let first = field.first_site();
    let boundary = field.boundary();
    let amps = field.amplitudes_mut();
    let len = amps.len();
    match (pairing, boundary) {
        (Pairing::OddPairs, _) => {
            // windows start on an even label, so storage pairs are (2m, 2m+1)
            for pair in amps.chunks_exact_mut(2) {
                (pair[0], pair[1]) = HalfStepBlock::mix(pair[0], pair[1]);
            }
        }
        (Pairing::EvenPairs, Boundary::Line) => {
            if amps[0] != ZERO {
                return Err(WalkError::WindowOverflow { site: first, time });
            }
            if amps[len - 1] != ZERO {
                return Err(WalkError::WindowOverflow {
                    site: first + len as i64 - 1,
                    time,
                });
            }
            for pair in amps[1..len - 1].chunks_exact_mut(2) {
                (pair[0], pair[1]) = HalfStepBlock::mix_div(pair[0], pair[1]);
            }
        }
        (Pairing::EvenPairs, Boundary::Circle(_)) => {
            for pair in amps[1..len - 1].chunks_exact_mut(2) {
                (pair[0], pair[1]) = HalfStepBlock::mix_div(pair[0], pair[1]);
            }
            (amps[len - 1], amps[0]) = HalfStepBlock::mix_div(amps[len - 1], amps[0]);
        }
    }
    Ok(())
}

/// `U_o|n⟩ = (|n⟩ + i|n + (−1)^n⟩)/√2`
pub fn apply_uo(field: &mut AmplitudeField) -> Result<()> {
    apply_pairs(field, Pairing::OddPairs)
}

/// `U_e|n⟩ = (|n⟩ + i|n − (−1)^n⟩)/√2`
///
/// Fails with [`WalkError::WindowOverflow`] if an edge site of a line window
/// carries amplitude, since its partner is not stored.
pub fn apply_ue(field: &mut AmplitudeField) -> Result<()> {
    apply_pairs(field, Pairing::EvenPairs)
}

/// One full step `U_e U_o`; advances the clock by one.
pub fn step_coinless(field: &mut AmplitudeField) -> Result<()> {
    if field.boundary() == Boundary::Line {
        // check before touching anything so an overflow leaves the field intact
        let a = field.amplitudes();
        let n = a.len();
        if a[0] != ZERO || a[1] != ZERO {
            return Err(WalkError::WindowOverflow {
                site: field.first_site(),
                time: field.time(),
            });
        }
        if a[n - 1] != ZERO || a[n - 2] != ZERO {
            return Err(WalkError::WindowOverflow {
                site: field.last_site(),
                time: field.time(),
            });
        }
    }
    apply_uo(field)?;
    apply_ue(field)?;
    field.set_time(field.time() + 1);
    Ok(())
}

/// One coined step: the coin on every cell, then the flip-flop shift
/// `U|N⟩ = |N⟩/√2 + (iσ₁/√2) Σ± ((1 ± σ₃)/2)|N ∓ 1⟩`.
///
/// The upper component of cell `N` moves to `N − 1` and becomes a lower
/// component, the lower one moves to `N + 1` and becomes an upper component;
/// half the probability stays put.
pub fn step_coined(cells: &mut TwoComponentField) -> Result<()> {
    let coin = CoinMatrix::default();
    let boundary = cells.boundary();
    let first = cells.first_cell();
    let time = cells.time();
    let tossed: Vec<[C64; 2]> = cells.cells().iter().map(|c| coin.apply(*c)).collect();
    let len = tossed.len();
    if boundary == Boundary::Line && (tossed[0][0] != ZERO || tossed[len - 1][1] != ZERO) {
        let site = if tossed[0][0] != ZERO {
            2 * first
        } else {
            2 * (first + len as i64) - 1
        };
        return Err(WalkError::WindowOverflow { site, time });
    }
    let stay = C64::new(1.0 / SQRT_2, 0.0);
    let hop = I / SQRT_2;
    let fetch = |i: isize| -> [C64; 2] {
        match boundary {
            Boundary::Line if i < 0 || i >= len as isize => [ZERO, ZERO],
            _ => tossed[i.rem_euclid(len as isize) as usize],
        }
    };
    for (i, out) in cells.cells_mut().iter_mut().enumerate() {
        let i = i as isize;
        let here = tossed[i as usize];
        let from_left = fetch(i - 1); // lower component moving right
        let from_right = fetch(i + 1); // upper component moving left
        *out = [
            stay * here[0] + hop * from_left[1],
            stay * here[1] + hop * from_right[0],
        ];
    }
    cells.set_time(time + 1);
    Ok(())
}

/// Probability distribution of the exact symmetric classical walk.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalDistribution {
    boundary: Boundary,
    first_site: i64,
    probs: Vec<f64>,
    time: u64,
}

impl ClassicalDistribution {
    pub fn from_field(field: &AmplitudeField) -> Self {
        Self {
            boundary: field.boundary(),
            first_site: field.first_site(),
            probs: field.amplitudes().iter().map(|a| a.norm_sqr()).collect(),
            time: field.time(),
        }
    }

    pub fn get(&self, n: i64) -> f64 {
        match self.boundary {
            Boundary::Line => {
                let i = n - self.first_site;
                if (0..self.probs.len() as i64).contains(&i) {
                    self.probs[i as usize]
                } else {
                    0.0
                }
            }
            Boundary::Circle(size) => self.probs[n.rem_euclid(size as i64) as usize],
        }
    }

    pub fn sites(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let first = self.first_site;
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (first + i as i64, *p))
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    /// Field with real amplitudes `√p`; only the distribution is meaningful.
    pub fn to_field(&self) -> AmplitudeField {
        let mut field = match self.boundary {
            Boundary::Line => AmplitudeField::zeros_line(
                self.first_site,
                self.first_site + self.probs.len() as i64 - 1,
            ),
            Boundary::Circle(size) => {
                AmplitudeField::zeros_circle(size).expect("boundary validated on construction")
            }
        };
        for (amp, p) in field.amplitudes_mut().iter_mut().zip(&self.probs) {
            *amp = C64::new(p.sqrt(), 0.0);
        }
        field.set_time(self.time);
        field
    }
}

/// `p'(n) = (p(n−1) + p(n+1)) / 2`, evaluated exactly with no sampling.
pub fn step_classical(dist: &mut ClassicalDistribution) -> Result<()> {
    let len = dist.probs.len();
    if dist.boundary == Boundary::Line && (dist.probs[0] != 0.0 || dist.probs[len - 1] != 0.0) {
        let site = if dist.probs[0] != 0.0 {
            dist.first_site
        } else {
            dist.first_site + len as i64 - 1
        };
        return Err(WalkError::WindowOverflow {
            site,
            time: dist.time,
        });
    }
    let old = std::mem::take(&mut dist.probs);
    let wrap = dist.boundary != Boundary::Line;
    dist.probs = (0..len)
        .map(|i| {
            let left = if i > 0 {
                old[i - 1]
            } else if wrap {
                old[len - 1]
            } else {
                0.0
            };
            let right = if i + 1 < len {
                old[i + 1]
            } else if wrap {
                old[0]
            } else {
                0.0
            };
            0.5 * left + 0.5 * right
        })
        .collect();
    dist.time += 1;
    Ok(())
}

/// Evolves a copy of `field` by `steps` steps of the chosen walk.
///
/// For [`WalkKind::ClassicalSymmetric`] the result carries amplitudes `√p`.
pub fn evolve(field: &AmplitudeField, steps: u64, kind: WalkKind) -> Result<AmplitudeField> {
    match kind {
        WalkKind::CoinlessStaggered => {
            let mut out = field.clone();
            for _ in 0..steps {
                step_coinless(&mut out)?;
            }
            Ok(out)
        }
        WalkKind::CoinedFlipFlop => {
            let mut cells = pack(field);
            for _ in 0..steps {
                step_coined(&mut cells)?;
            }
            Ok(unpack(&cells))
        }
        WalkKind::ClassicalSymmetric => {
            let mut dist = ClassicalDistribution::from_field(field);
            for _ in 0..steps {
                step_classical(&mut dist)?;
            }
            Ok(dist.to_field())
        }
    }
}
