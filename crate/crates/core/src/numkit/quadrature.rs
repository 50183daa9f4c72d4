// SPDX-License-Identifier: Apache-2.0

//! Composite Gauss-Legendre quadrature with panel doubling.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Nodes per panel.
pub const GAUSS_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    rel_tol: f64,
    max_panel_doublings: usize,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, max_panel_doublings: usize) -> Result<Self> {
        if !(1e-14..=1e-2).contains(&rel_tol) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol {rel_tol:e} outside [1e-14, 1e-2]"
            )));
        }
        if max_panel_doublings < 1 {
            return Err(Error::InvalidArgument(
                "max_panel_doublings must be at least 1".into(),
            ));
        }
        Ok(Self {
            rel_tol,
            max_panel_doublings,
        })
    }

    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, Self::default().max_panel_doublings)
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_panel_doublings(&self) -> usize {
        self.max_panel_doublings
    }

    pub fn points_per_panel(&self) -> usize {
        GAUSS_POINTS
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_panel_doublings: 16,
        }
    }
}

/// Values that can be integrated: a vector space with a norm.
pub trait Integrand: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, w: f64, other: &Self);
    fn norm(&self) -> f64;
    fn distance(&self, other: &Self) -> f64;
    fn is_finite(&self) -> bool;
}

impl Integrand for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn add_scaled(&mut self, w: f64, other: &Self) {
        *self += w * other;
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Integrand for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, w: f64, other: &Self) {
        *self += other * w;
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }
}

impl Integrand for CMatrix {
    fn zero_like(&self) -> Self {
        CMatrix::zeros(self.dim()).expect("dimension already validated")
    }
    fn add_scaled(&mut self, w: f64, other: &Self) {
        self.axpy(Complex64::new(w, 0.0), other);
    }
    fn norm(&self) -> f64 {
        CMatrix::norm(self)
    }
    fn distance(&self, other: &Self) -> f64 {
        CMatrix::distance(self, other)
    }
    fn is_finite(&self) -> bool {
        CMatrix::is_finite(self)
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
pub fn gauss_legendre_rule() -> &'static [(f64, f64); GAUSS_POINTS] {
    static RULE: OnceLock<[(f64, f64); GAUSS_POINTS]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_POINTS;
        let mut rule = [(0.0, 0.0); GAUSS_POINTS];
        for i in 0..n / 2 {
            // Newton on P_n from the Tricomi initial guess.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule[i] = (-x, w);
            rule[n - 1 - i] = (x, w);
        }
        rule
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrates `f` over `[a, b]` with `panels` equal Gauss-Legendre panels.
///
/// Also returns `∫‖f‖`, used as an absolute floor for integrals that cancel.
fn composite<T, F>(f: &mut F, a: f64, b: f64, panels: usize) -> Result<(T, f64)>
where
    T: Integrand,
    F: FnMut(f64) -> Result<T>,
{
    let rule = gauss_legendre_rule();
    let h = (b - a) / panels as f64;
    let mut acc: Option<T> = None;
    let mut abs_acc = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        for &(x, w) in rule.iter() {
            let v = f(mid + 0.5 * h * x)?;
            if !v.is_finite() {
                return Err(Error::NonFinite("quadrature integrand"));
            }
            let wt = 0.5 * h * w;
            abs_acc += wt * v.norm();
            match acc.as_mut() {
                Some(s) => s.add_scaled(wt, &v),
                None => {
                    let mut s = v.zero_like();
                    s.add_scaled(wt, &v);
                    acc = Some(s);
                }
            }
        }
    }
    Ok((acc.expect("at least one node"), abs_acc))
}

/// Adaptive composite Gauss-Legendre quadrature of `f` over `[a, b]`.
///
/// Starts with one 16-node panel and doubles the panel count until two
/// successive estimates agree to `rel_tol` (relative to the estimate, with a
/// floor of `rel_tol · 1e-3 · ∫‖f‖` so that cancelling integrals terminate).
pub fn quad_adaptive<T, F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<T>
where
    T: Integrand,
    F: FnMut(f64) -> Result<T>,
{
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidArgument(format!(
            "quadrature interval [{a}, {b}] is not ordered"
        )));
    }
    if a == b {
        let v = f(a)?;
        return Ok(v.zero_like());
    }
    let (mut prev, _) = composite(&mut f, a, b, 1)?;
    let mut panels = 1usize;
    let mut last_change = f64::INFINITY;
    for _ in 0..spec.max_panel_doublings {
        panels *= 2;
        let (next, abs_int) = composite(&mut f, a, b, panels)?;
        last_change = next.distance(&prev);
        let scale = next.norm().max(1e-3 * abs_int);
        if last_change <= spec.rel_tol * scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        what: "quad_adaptive",
        iterations: spec.max_panel_doublings,
        last_change,
    })
}

/// Real-valued convenience wrapper.
pub fn quad_real<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    quad_adaptive(|x| Ok(f(x)), a, b, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    #[test]
    fn rule_is_symmetric_and_normalised() {
        let rule = gauss_legendre_rule();
        let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        for i in 0..GAUSS_POINTS {
            assert!((rule[i].0 + rule[GAUSS_POINTS - 1 - i].0).abs() < 1e-15);
        }
        // exact for degree 31
        let q: f64 = rule.iter().map(|&(x, w)| w * x.powi(30)).sum();
        assert!((q - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn linear_integrand() {
        let v = quad_real(|t| t, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exponential_integrand() {
        let v = quad_real(f64::exp, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((v - (E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn sine_integrand() {
        let v = quad_real(f64::sin, 0.0, PI, &QuadratureSpec::default()).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cancelling_integrand_terminates() {
        let v = quad_real(f64::sin, 0.0, 2.0 * PI, &QuadratureSpec::default()).unwrap();
        assert!(v.abs() < 1e-13);
    }

    #[test]
    fn empty_interval_is_zero() {
        let v = quad_real(|t| t + 1.0, 2.0, 2.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn reversed_interval_rejected() {
        assert!(quad_real(|t| t, 1.0, 0.0, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn pathological_integrand_reports_no_convergence() {
        let spec = QuadratureSpec::new(1e-12, 3).unwrap();
        let err = quad_real(|t| (1.0 / (t + 1e-9)).sin(), 0.0, 1.0, &spec).unwrap_err();
        assert_eq!(err.name(), "NoConvergence");
    }

    #[test]
    fn spec_bounds() {
        assert!(QuadratureSpec::new(1e-15, 4).is_err());
        assert!(QuadratureSpec::new(0.1, 4).is_err());
        assert!(QuadratureSpec::new(1e-8, 0).is_err());
        assert_eq!(QuadratureSpec::default().points_per_panel(), 16);
    }

    #[test]
    fn matrix_integrand_is_entrywise() {
        let m = quad_adaptive(
            |t| {
                CMatrix::from_diag(&[Complex64::new(t, 0.0), Complex64::new(0.0, t.exp())])
            },
            0.0,
            1.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((m[(0, 0)] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((m[(1, 1)] - Complex64::new(0.0, E - 1.0)).norm() < 1e-14);
    }
}
