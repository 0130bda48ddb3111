//! Coinless (staggered) discrete-time quantum walks.
//!
//! A walker lives on the integer sites of a line, or on an even ring of `N`
//! sites. One time step is the product of two half-steps, each a
//! block-diagonal unitary built from the constant 2×2 block
//! `(1/√2)·[[1, i], [i, 1]]`:
//!
//! * [`apply_uo`](evolution::apply_uo) mixes the pairs `(2m, 2m+1)`,
//! * [`apply_ue`](evolution::apply_ue) mixes the pairs `(2m+1, 2m+2)`,
//!
//! and a full step applies `U_o` first, then `U_e`. No coin register is
//! needed: the two coin states are absorbed into the parity of the site label.
//!
//! The crate carries three engines that check one another:
//!
//! * [`evolution`] steps amplitudes directly in position space, and also
//!   provides the equivalent coined flip-flop walk and the exact classical
//!   walk for reference;
//! * [`spectral`] diagonalizes the 2×2 momentum-space propagator `M(k)` and
//!   evolves by phases `e^{±iω_k t}`;
//! * [`asymptotics`] holds the stationary-phase long-time forms (smoothed
//!   density, moments, peak amplitudes).
//!
//! [`wall`] adds an absorbing wall between sites `-1` and `0` and tracks the
//! cumulative absorption probability, and [`report`] turns runs into
//! deterministic CSV/JSON artifacts for the `qwalk` binary.
//!
//! ```
//! use qwalk::{make_initial, Boundary, InitialState, evolution::step_coinless};
//!
//! let mut field = make_initial(&InitialState::OriginDelta, Boundary::Line, 1).unwrap();
//! step_coinless(&mut field).unwrap();
//! let probs: Vec<f64> = (-1..=2).map(|n| field.get(n).norm_sqr()).collect();
//! for p in probs {
//!     assert!((p - 0.25).abs() < 1e-15);
//! }
//! ```

pub mod asymptotics;
pub mod error;
pub mod evolution;
pub mod report;
pub mod spectral;
pub mod state;
pub mod wall;

pub use error::{Result, WalkError};
pub use evolution::WalkKind;
pub use state::{
    make_initial, moments, probability_distribution, support_bounds, AmplitudeField, Boundary,
    InitialState, MomentReport, TwoComponentField, C64,
};
