// SPDX-License-Identifier: Apache-2.0

//! Foundational numerics: small dense complex matrices, their inverse and
//! exponential, and adaptive Gauss-Legendre quadrature.

mod linalg;
mod matrix;
mod quadrature;

pub use linalg::{mat_exp, mat_inverse, PIVOT_THRESHOLD};
pub use matrix::{CMatrix, MAX_DIM};
pub use num_complex::Complex64 as Complex;
pub use quadrature::{gauss_legendre_rule, quad_adaptive, quad_real, Integrand, QuadratureSpec, GAUSS_POINTS};

/// The imaginary unit.
pub const I: Complex = Complex::new(0.0, 1.0);
