// SPDX-License-Identifier: Apache-2.0

//! Weak- and strong-coupling expansions of the time-evolution operator.
//!
//! The crate is organised bottom-up:
//!
//! * [`numkit`]: complex matrices, inverse, exponential, quadrature.
//! * [`recursion_lab`]: geometric iteration in both regimes and the forward
//!   and backward recurrences for `I_n = e^{-1} ∫₀¹ xⁿ eˣ dx`.
//! * [`propagator`]: model Hamiltonians `H(t) = g·A(t)`, the exact propagator,
//!   the Volterra residual and the Dyson series.
//! * [`strong_expansion`]: the `L` operator, the backward map
//!   `u_{k+1} = L_k⁻¹ (I − u_k)`, its unrolled series in powers of `1/g`, and
//!   the mean-value machinery that picks the intermediate times.

pub mod error;
pub mod numkit;
pub mod propagator;
pub mod recursion_lab;
pub mod strong_expansion;

pub use error::{Error, Result};
