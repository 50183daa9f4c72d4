// SPDX-License-Identifier: Apache-2.0

//! Model generators `H(t) = g·A(t)` on a finite time window.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkit::CMatrix;

/// Uniform sample count used to certify positivity on the window.
pub const POSITIVITY_SAMPLES: usize = 129;

const HERMITIAN_TOL: f64 = 1e-12;

/// Scalar profile `h(t)` for one-dimensional models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarProfile {
    /// `h(t) = c`
    Const { c: f64 },
    /// `h(t) = 1 + α t²`
    Poly { alpha: f64 },
    /// `h(t) = β + e^{−t²}`
    Gauss { beta: f64 },
}

impl ScalarProfile {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            ScalarProfile::Const { c } => c,
            ScalarProfile::Poly { alpha } => 1.0 + alpha * t * t,
            ScalarProfile::Gauss { beta } => beta + (-t * t).exp(),
        }
    }

    fn params_finite(&self) -> bool {
        match *self {
            ScalarProfile::Const { c } => c.is_finite(),
            ScalarProfile::Poly { alpha } => alpha.is_finite(),
            ScalarProfile::Gauss { beta } => beta.is_finite(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelFamily {
    /// Time-independent Hermitian `A₀`, `1 <= d <= 8`.
    Constant { a0: CMatrix },
    /// One-dimensional `A(t) = h(t)`.
    ScalarProfile(ScalarProfile),
    /// `A(t) = a·I + b·(cos ωt·σx + sin ωt·σy)`; `ω = 0` gives `a·I + b·σx`.
    /// Eigenvalues are `a ± |b|` at every time.
    TwoLevel { a: f64, b: f64, omega: f64 },
}

/// Unvalidated model description, as read from a config file.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDescription {
    pub family: ModelFamily,
    pub g: f64,
    pub window: (f64, f64),
}

/// A validated Hermitian, positive-definite generator family.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianModel {
    family: ModelFamily,
    dim: usize,
    g: f64,
    t_min: f64,
    t_max: f64,
}

/// Validates a description into a model.
///
/// Positivity is checked at [`POSITIVITY_SAMPLES`] uniform points including
/// both endpoints. Every family's smallest eigenvalue is monotone in `|t|` or
/// constant, so its minimum over the window is attained at a sampled point and
/// the check covers every time a later quadrature may visit.
pub fn build_model(desc: &ModelDescription) -> Result<HamiltonianModel> {
    let (t_min, t_max) = desc.window;
    if !(t_min.is_finite() && t_max.is_finite()) || t_min >= t_max {
        return Err(Error::BadWindow { t_min, t_max });
    }
    if !desc.g.is_finite() || desc.g <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "coupling g must be positive, got {}",
            desc.g
        )));
    }
    let dim = match &desc.family {
        ModelFamily::Constant { a0 } => {
            let asym = a0.hermitian_defect();
            if asym > HERMITIAN_TOL * a0.norm().max(1.0) {
                return Err(Error::NotHermitian { asymmetry: asym });
            }
            a0.dim()
        }
        ModelFamily::ScalarProfile(p) => {
            if !p.params_finite() {
                return Err(Error::NonFinite("profile parameters"));
            }
            1
        }
        ModelFamily::TwoLevel { a, b, omega } => {
            if !(a.is_finite() && b.is_finite() && omega.is_finite()) {
                return Err(Error::NonFinite("two-level parameters"));
            }
            2
        }
    };
    let model = HamiltonianModel {
        family: desc.family.clone(),
        dim,
        g: desc.g,
        t_min,
        t_max,
    };
    model.check_positive_definite()?;
    Ok(model)
}

impl HamiltonianModel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn family(&self) -> &ModelFamily {
        &self.family
    }

    pub fn window(&self) -> (f64, f64) {
        (self.t_min, self.t_max)
    }

    /// Same generator with coupling `g`.
    pub fn with_coupling(&self, g: f64) -> Result<Self> {
        build_model(&ModelDescription {
            family: self.family.clone(),
            g,
            window: (self.t_min, self.t_max),
        })
    }

    /// True when `H(t)` does not depend on `t`.
    pub fn is_time_independent(&self) -> bool {
        match self.family {
            ModelFamily::Constant { .. } => true,
            ModelFamily::ScalarProfile(ScalarProfile::Const { .. }) => true,
            ModelFamily::ScalarProfile(_) => false,
            ModelFamily::TwoLevel { b, omega, .. } => b == 0.0 || omega == 0.0,
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        let slack = 1e-12 * (self.t_max - self.t_min).max(t.abs()).max(1.0);
        t >= self.t_min - slack && t <= self.t_max + slack
    }

    pub fn check_in_window(&self, t: f64) -> Result<()> {
        if t.is_finite() && self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfWindow {
                t,
                t_min: self.t_min,
                t_max: self.t_max,
            })
        }
    }

    /// `H(t) = g·A(t)`.
    pub fn eval_h(&self, t: f64) -> Result<CMatrix> {
        self.check_in_window(t)?;
        Ok(self.generator(t).scale_real(self.g))
    }

    /// Coupling-free part `A(t)`, without the window check.
    pub(crate) fn generator(&self, t: f64) -> CMatrix {
        match &self.family {
            ModelFamily::Constant { a0 } => a0.clone(),
            ModelFamily::ScalarProfile(p) => {
                CMatrix::from_vec(1, vec![Complex64::new(p.eval(t), 0.0)]).expect("finite profile")
            }
            ModelFamily::TwoLevel { a, b, omega } => {
                let off = Complex64::new(b * (omega * t).cos(), -b * (omega * t).sin());
                CMatrix::from_vec(2, vec![Complex64::new(*a, 0.0), off, off.conj(), Complex64::new(*a, 0.0)])
                    .expect("finite two-level entries")
            }
        }
    }

    fn check_positive_definite(&self) -> Result<()> {
        match &self.family {
            ModelFamily::Constant { a0 } => {
                let min = min_cholesky_pivot(a0);
                if min > 0.0 {
                    Ok(())
                } else {
                    Err(Error::NotPositiveDefinite {
                        t: self.t_min,
                        min_eigenvalue: min,
                    })
                }
            }
            ModelFamily::ScalarProfile(_) | ModelFamily::TwoLevel { .. } => {
                let n = POSITIVITY_SAMPLES - 1;
                for k in 0..=n {
                    let t = self.t_min + (self.t_max - self.t_min) * k as f64 / n as f64;
                    let lam = min_eigenvalue_small(&self.generator(t));
                    if !(lam > 0.0) {
                        return Err(Error::NotPositiveDefinite {
                            t,
                            min_eigenvalue: lam,
                        });
                    }
                }
                Ok(())
            }
        }
    }
}

/// Smallest eigenvalue of a Hermitian matrix with `d <= 2`.
pub fn min_eigenvalue_small(m: &CMatrix) -> f64 {
    match m.dim() {
        1 => m[(0, 0)].re,
        2 => {
            let p = m[(0, 0)].re;
            let r = m[(1, 1)].re;
            let q = m[(0, 1)].norm();
            0.5 * (p + r) - (0.25 * (p - r) * (p - r) + q * q).sqrt()
        }
        _ => panic!("closed-form eigenvalue only for d <= 2"),
    }
}

/// Smallest pivot of an unpivoted Cholesky-style elimination of a Hermitian
/// matrix; positive exactly when the matrix is positive definite.
fn min_cholesky_pivot(m: &CMatrix) -> f64 {
    let d = m.dim();
    let mut a = m.clone();
    let mut min = f64::INFINITY;
    for k in 0..d {
        let pivot = a[(k, k)].re;
        min = min.min(pivot);
        if !(pivot > 0.0) {
            return pivot;
        }
        for i in k + 1..d {
            let factor = a[(i, k)] / pivot;
            for j in k..d {
                let akj = a[(k, j)];
                a[(i, j)] -= factor * akj;
            }
        }
    }
    min
}
