// SPDX-License-Identifier: Apache-2.0

//! Inverse and exponential of small complex matrices.

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Relative pivot magnitude below which a matrix is treated as singular.
pub const PIVOT_THRESHOLD: f64 = 1e-13;

/// Gauss-Jordan elimination with partial (row) pivoting.
///
/// Fails with [`Error::SingularMatrix`] when a pivot drops below
/// `1e-13 · ‖m‖_F`.
pub fn mat_inverse(m: &CMatrix) -> Result<CMatrix> {
    m.ensure_finite()?;
    let d = m.dim();
    let threshold = PIVOT_THRESHOLD * m.norm();
    let mut a = m.clone();
    let mut inv = CMatrix::identity(d)?;

    for col in 0..d {
        let (pivot_row, pivot_mag) = (col..d)
            .map(|r| (r, a[(r, col)].norm()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_mag < threshold || pivot_mag == 0.0 {
            return Err(Error::SingularMatrix {
                pivot: pivot_mag,
                threshold,
            });
        }
        if pivot_row != col {
            for j in 0..d {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot_row, j)];
                a[(pivot_row, j)] = tmp;
                let tmp = inv[(col, j)];
                inv[(col, j)] = inv[(pivot_row, j)];
                inv[(pivot_row, j)] = tmp;
            }
        }
        let p = a[(col, col)].inv();
        for j in 0..d {
            a[(col, j)] *= p;
            inv[(col, j)] *= p;
        }
        for r in 0..d {
            if r == col {
                continue;
            }
            let factor = a[(r, col)];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                let aj = a[(col, j)];
                let ij = inv[(col, j)];
                a[(r, j)] -= factor * aj;
                inv[(r, j)] -= factor * ij;
            }
        }
    }
    inv.ensure_finite()?;
    Ok(inv)
}

/// Matrix exponential `e^m`.
///
/// `d = 1` and `d = 2` use closed forms (for 2×2, `m = τI + N` with `N`
/// traceless and `N² = s²I`, so `e^m = e^τ (cosh s · I + sinh(s)/s · N)`).
/// Larger matrices use scaling and squaring around a truncated Taylor series.
pub fn mat_exp(m: &CMatrix) -> Result<CMatrix> {
    m.ensure_finite()?;
    let out = match m.dim() {
        1 => CMatrix::from_vec(1, vec![m[(0, 0)].exp()])?,
        2 => exp_2x2(m)?,
        _ => exp_scaling_squaring(m)?,
    };
    out.ensure_finite()?;
    Ok(out)
}

fn exp_2x2(m: &CMatrix) -> Result<CMatrix> {
    let tau = m.trace() * 0.5;
    let n00 = m[(0, 0)] - tau;
    let n01 = m[(0, 1)];
    let n10 = m[(1, 0)];
    let s2 = n00 * n00 + n01 * n10;
    let s = s2.sqrt();
    let cosh = s.cosh();
    let sinhc = if s.norm() < 1e-4 {
        // sinh(s)/s = 1 + s²/6 + s⁴/120 + s⁶/5040 + ...
        Complex64::new(1.0, 0.0) + s2 / 6.0 + s2 * s2 / 120.0 + s2 * s2 * s2 / 5040.0
    } else {
        s.sinh() / s
    };
    let e = tau.exp();
    CMatrix::from_vec(
        2,
        vec![
            e * (cosh + sinhc * n00),
            e * sinhc * n01,
            e * sinhc * n10,
            e * (cosh - sinhc * n00),
        ],
    )
}

fn exp_scaling_squaring(m: &CMatrix) -> Result<CMatrix> {
    let d = m.dim();
    let norm = m.norm();
    let mut squarings = 0u32;
    if norm > 0.25 {
        squarings = (norm / 0.25).log2().ceil() as u32;
    }
    let scaled = m.scale_real(0.5f64.powi(squarings as i32));

    let mut sum = CMatrix::identity(d)?;
    let mut term = CMatrix::identity(d)?;
    for k in 1..=40 {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        sum += &term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}
