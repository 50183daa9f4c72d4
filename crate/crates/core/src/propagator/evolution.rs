// SPDX-License-Identifier: Apache-2.0

//! Reference solution of `i ∂u/∂t = H(t)·u` and the integral-equation residual.

use num_complex::Complex64;

use super::model::HamiltonianModel;
use crate::error::{Error, Result};
use crate::numkit::{mat_exp, quad_adaptive, CMatrix, QuadratureSpec};

pub const DEFAULT_PROPAGATOR_TOL: f64 = 1e-10;

/// Maximum number of step doublings before giving up.
pub const MAX_STEP_DOUBLINGS: usize = 24;

const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct PropagatorSample {
    pub t: f64,
    pub t0: f64,
    pub u: CMatrix,
}

/// `e^{−i H(mid) h}`.
fn midpoint_step(model: &HamiltonianModel, lo: f64, h: f64) -> Result<CMatrix> {
    let hmid = model.eval_h(lo + 0.5 * h)?;
    mat_exp(&hmid.scale(MINUS_I * h))
}

/// Nodes `P_0 = I, P_1, …, P_steps` of the midpoint product over `[t0, t]`,
/// later times acting on the left.
fn midpoint_nodes(model: &HamiltonianModel, t: f64, t0: f64, steps: usize) -> Result<Vec<CMatrix>> {
    let h = (t - t0) / steps as f64;
    let mut u = CMatrix::identity(model.dim())?;
    let mut nodes = Vec::with_capacity(steps + 1);
    nodes.push(u.clone());
    for k in 0..steps {
        let step = midpoint_step(model, t0 + h * k as f64, h)?;
        u = &step * &u;
        nodes.push(u.clone());
    }
    Ok(nodes)
}

fn midpoint_product(model: &HamiltonianModel, t: f64, t0: f64, steps: usize) -> Result<CMatrix> {
    Ok(midpoint_nodes(model, t, t0, steps)?.pop().expect("at least one node"))
}

/// The midpoint product is symmetric, so its error is even in the step and
/// `(4·fine − coarse)/3` cancels the leading `h²` term.
pub(crate) fn richardson(fine: &CMatrix, coarse: &CMatrix) -> CMatrix {
    (fine.scale_real(4.0) - coarse.clone()).scale_real(1.0 / 3.0)
}

fn check_span(model: &HamiltonianModel, t: f64, t0: f64) -> Result<()> {
    model.check_in_window(t0)?;
    model.check_in_window(t)?;
    if t < t0 {
        return Err(Error::InvalidArgument(format!(
            "propagation needs t0 <= t (got t0 = {t0}, t = {t})"
        )));
    }
    Ok(())
}

/// Doubles the midpoint step count until successive extrapolated products
/// agree to `tol`; returns the fine step count and the converged value.
fn converge_steps(model: &HamiltonianModel, t: f64, t0: f64, tol: f64) -> Result<(usize, CMatrix)> {
    let mut steps = 2usize;
    let mut coarse = midpoint_product(model, t, t0, 1)?;
    let mut fine = midpoint_product(model, t, t0, steps)?;
    let mut prev = richardson(&fine, &coarse);
    let mut change = f64::INFINITY;
    for _ in 0..MAX_STEP_DOUBLINGS {
        steps *= 2;
        coarse = fine;
        fine = midpoint_product(model, t, t0, steps)?;
        let next = richardson(&fine, &coarse);
        change = next.distance(&prev);
        if change <= tol {
            return Ok((steps, next));
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        what: "exact_propagator",
        iterations: MAX_STEP_DOUBLINGS,
        last_change: change,
    })
}

/// `u(t, t0)` from the midpoint-exponential product `∏ e^{−iH(mid)Δt}`.
///
/// The step count is doubled until successive (extrapolated) products agree
/// to `tol` in Frobenius norm.
pub fn exact_propagator(model: &HamiltonianModel, t: f64, t0: f64, tol: f64) -> Result<PropagatorSample> {
    check_span(model, t, t0)?;
    let u = if t == t0 {
        CMatrix::identity(model.dim())?
    } else {
        converge_steps(model, t, t0, tol)?.1
    };
    Ok(PropagatorSample { t, t0, u })
}

/// Dense output of the exact propagator on `[t0, t_end]`.
///
/// The step count is fixed once by the same doubling rule as
/// [`exact_propagator`]. Nodes hold extrapolated products on the coarse grid;
/// intermediate times are reached from the node below with one extrapolated
/// partial step.
#[derive(Debug, Clone)]
pub struct Trajectory {
    model: HamiltonianModel,
    t0: f64,
    h: f64,
    nodes: Vec<CMatrix>,
}

impl Trajectory {
    pub fn new(model: &HamiltonianModel, t0: f64, t_end: f64, tol: f64) -> Result<Self> {
        check_span(model, t_end, t0)?;
        if t_end == t0 {
            return Ok(Self {
                model: model.clone(),
                t0,
                h: 0.0,
                nodes: vec![CMatrix::identity(model.dim())?],
            });
        }
        let fine_steps = converge_steps(model, t_end, t0, tol)?.0;
        let coarse_steps = fine_steps / 2;
        let fine = midpoint_nodes(model, t_end, t0, fine_steps)?;
        let coarse = midpoint_nodes(model, t_end, t0, coarse_steps)?;
        let nodes = coarse
            .iter()
            .enumerate()
            .map(|(k, c)| richardson(&fine[2 * k], c))
            .collect();
        Ok(Self {
            model: model.clone(),
            t0,
            h: (t_end - t0) / coarse_steps as f64,
            nodes,
        })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.h * (self.nodes.len() - 1) as f64
    }

    pub fn steps(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `u(t, t0)` for `t` in `[t0, t_end]`.
    pub fn at(&self, t: f64) -> Result<CMatrix> {
        let end = self.t_end();
        let slack = 1e-12 * (end - self.t0).abs().max(1.0);
        if !(t >= self.t0 - slack && t <= end + slack) {
            return Err(Error::OutOfWindow {
                t,
                t_min: self.t0,
                t_max: end,
            });
        }
        if self.h == 0.0 || t <= self.t0 {
            return Ok(self.nodes[0].clone());
        }
        let k = (((t - self.t0) / self.h).floor() as usize).min(self.nodes.len() - 1);
        let lo = self.t0 + self.h * k as f64;
        let dt = t - lo;
        if dt <= 0.0 {
            return Ok(self.nodes[k].clone());
        }
        let one = midpoint_step(&self.model, lo, dt)?;
        let half = 0.5 * dt;
        let two = &midpoint_step(&self.model, lo + half, half)? * &midpoint_step(&self.model, lo, half)?;
        Ok(&richardson(&two, &one) * &self.nodes[k])
    }
}

/// `‖u_candidate − (I − i ∫_{t0}^{t} H(s)·u_history(s) ds)‖_F`.
pub fn volterra_residual<F>(
    model: &HamiltonianModel,
    u_candidate: &CMatrix,
    mut u_history: F,
    t: f64,
    t0: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<CMatrix>,
{
    check_span(model, t, t0)?;
    if u_candidate.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: u_candidate.dim(),
        });
    }
    let spec = QuadratureSpec::default();
    let integral: CMatrix = quad_adaptive(
        |s| {
            let h = model.eval_h(s)?;
            Ok(&h * &u_history(s)?)
        },
        t0,
        t,
        &spec,
    )?;
    let mut rhs = CMatrix::identity(model.dim())?;
    rhs.axpy(MINUS_I, &integral);
    Ok(u_candidate.distance(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::model::{build_model, ModelDescription, ModelFamily, ScalarProfile};
    use std::f64::consts::PI;

    fn scalar_const(g: f64) -> HamiltonianModel {
        build_model(&ModelDescription {
            family: ModelFamily::ScalarProfile(ScalarProfile::Const { c: 1.0 }),
            g,
            window: (0.0, 4.0),
        })
        .unwrap()
    }

    fn two_level(a: f64, b: f64, omega: f64) -> HamiltonianModel {
        build_model(&ModelDescription {
            family: ModelFamily::TwoLevel { a, b, omega },
            g: 1.0,
            window: (0.0, 3.0),
        })
        .unwrap()
    }

    #[test]
    fn scalar_half_turn() {
        let u = exact_propagator(&scalar_const(1.0), PI, 0.0, DEFAULT_PROPAGATOR_TOL).unwrap().u;
        assert!((u[(0, 0)] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn two_level_quarter_period() {
        // e^{-i(2I+σx)π/2} = e^{-iπ}·(−iσx) = iσx
        let u = exact_propagator(&two_level(2.0, 1.0, 0.0), PI / 2.0, 0.0, DEFAULT_PROPAGATOR_TOL)
            .unwrap()
            .u;
        let want = CMatrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(u.distance(&want) < 1e-12, "{u:?}");
    }

    #[test]
    fn identity_at_coincident_times() {
        let m = two_level(2.0, 1.0, 1.0);
        let s = exact_propagator(&m, 1.2, 1.2, DEFAULT_PROPAGATOR_TOL).unwrap();
        assert_eq!(s.u, CMatrix::identity(2).unwrap());
    }

    #[test]
    fn rotating_field_matches_rotating_frame_solution() {
        // With A(t) = aI + b(cos ωt σx + sin ωt σy), the rotating frame gives
        // u(t) = e^{-iωtσz/2} e^{-i(a − ωσz/2 + bσx)t} up to the sign convention below.
        let (a, b, omega, t) = (2.0, 0.7, 1.3, 1.5);
        let m = two_level(a, b, omega);
        let u = exact_propagator(&m, t, 0.0, DEFAULT_PROPAGATOR_TOL).unwrap().u;
        let sz_half = CMatrix::from_diag(&[Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0)]).unwrap();
        let frame = mat_exp(&sz_half.scale(Complex64::new(0.0, -omega * t))).unwrap();
        let heff = CMatrix::from_real_rows(&[vec![a - omega / 2.0, b], vec![b, a + omega / 2.0]]).unwrap();
        let body = mat_exp(&heff.scale(Complex64::new(0.0, -t))).unwrap();
        let want = &frame * &body;
        assert!(u.distance(&want) < 1e-9, "dist {}", u.distance(&want));
    }

    #[test]
    fn unitarity_and_composition() {
        let m = two_level(2.0, 1.5, 0.8);
        let u02 = exact_propagator(&m, 2.0, 0.0, DEFAULT_PROPAGATOR_TOL).unwrap().u;
        let u01 = exact_propagator(&m, 0.9, 0.0, DEFAULT_PROPAGATOR_TOL).unwrap().u;
        let u12 = exact_propagator(&m, 2.0, 0.9, DEFAULT_PROPAGATOR_TOL).unwrap().u;
        assert!(u02.unitarity_defect() < 1e-8);
        assert!(u02.distance(&(&u12 * &u01)) < 1e-8);
    }

    #[test]
    fn rejects_backward_span() {
        let m = scalar_const(1.0);
        assert!(exact_propagator(&m, 0.5, 1.0, DEFAULT_PROPAGATOR_TOL).is_err());
        assert_eq!(
            exact_propagator(&m, 5.0, 0.0, DEFAULT_PROPAGATOR_TOL).unwrap_err().name(),
            "OutOfWindow"
        );
    }

    #[test]
    fn trajectory_matches_pointwise_propagator() {
        let m = two_level(2.0, 1.0, 1.1);
        let traj = Trajectory::new(&m, 0.0, 2.0, 1e-11).unwrap();
        for t in [0.0, 0.123, 1.0, 1.77, 2.0] {
            let direct = exact_propagator(&m, t, 0.0, 1e-11).unwrap().u;
            assert!(traj.at(t).unwrap().distance(&direct) < 1e-9, "t = {t}");
        }
        assert!(traj.at(2.5).is_err());
    }

    #[test]
    fn residual_of_exact_solution_vanishes() {
        let m = two_level(2.0, 1.0, 1.1);
        let traj = Trajectory::new(&m, 0.0, 1.0, 1e-11).unwrap();
        let r = volterra_residual(&m, &traj.at(1.0).unwrap(), |s| traj.at(s), 1.0, 0.0).unwrap();
        assert!(r < 1e-6, "residual {r}");
    }

    #[test]
    fn residual_of_identity_is_norm_of_l() {
        let m = scalar_const(3.0);
        let id = CMatrix::identity(1).unwrap();
        let r = volterra_residual(&m, &id, |_| CMatrix::identity(1), 1.0, 0.0).unwrap();
        assert!((r - 3.0).abs() < 1e-13);
    }
}
