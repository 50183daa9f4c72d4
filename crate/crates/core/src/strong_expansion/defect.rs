// SPDX-License-Identifier: Apache-2.0

//! How far the mean-value replacement `∫H·u ≈ u(t*)·∫H` is from holding.
//!
//! For real scalar `u` a mean-value time always exists. For the unitary,
//! oscillating `u` of quantum evolution it generally does not: with constant
//! scalar `H = g` and `θ = g·t_k` the best achievable relative defect is
//! `1 − 2 sin(θ/2)/θ`, attained at `t* = t_k/2`.

use num_complex::Complex64;

use super::grid::TimeGrid;
use crate::error::{Error, Result};
use crate::numkit::{quad_adaptive, CMatrix, QuadratureSpec};
use crate::propagator::{HamiltonianModel, Trajectory, DEFAULT_PROPAGATOR_TOL};

pub const DEFECT_SCAN_POINTS: usize = 129;

/// Golden-section stopping width.
pub const TIME_RESOLUTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectReport {
    pub t_candidate: f64,
    /// `‖∫H·u − u(t_candidate)·∫H‖_F / ‖∫H‖_F` over `[t0, t_k]`.
    pub defect_rel: f64,
}

/// The two integrals over `[t0, t_k]`, computed once per `t_k`.
struct DefectIntegrals {
    h_u: CMatrix,
    h: CMatrix,
    h_norm: f64,
}

impl DefectIntegrals {
    fn new<U>(model: &HamiltonianModel, t0: f64, t_k: f64, u_ref: &mut U) -> Result<Self>
    where
        U: FnMut(f64) -> Result<CMatrix>,
    {
        model.check_in_window(t0)?;
        model.check_in_window(t_k)?;
        if t_k <= t0 {
            return Err(Error::InvalidArgument(format!(
                "defect needs t0 < t_k (got t0 = {t0}, t_k = {t_k})"
            )));
        }
        let spec = QuadratureSpec::default();
        let h_u: CMatrix = quad_adaptive(|s| Ok(&model.eval_h(s)? * &u_ref(s)?), t0, t_k, &spec)?;
        let h: CMatrix = quad_adaptive(|s| model.eval_h(s), t0, t_k, &spec)?;
        let h_norm = h.norm();
        Ok(Self { h_u, h, h_norm })
    }

    fn defect<U>(&self, t_candidate: f64, u_ref: &mut U) -> Result<f64>
    where
        U: FnMut(f64) -> Result<CMatrix>,
    {
        let u = u_ref(t_candidate)?;
        Ok(self.h_u.distance(&(&u * &self.h)) / self.h_norm)
    }
}

/// Relative violation of `∫_{t0}^{t_k} H·u = u(t_candidate)·∫_{t0}^{t_k} H`.
pub fn defect_rel<U>(
    model: &HamiltonianModel,
    t0: f64,
    t_k: f64,
    t_candidate: f64,
    mut u_ref: U,
) -> Result<DefectReport>
where
    U: FnMut(f64) -> Result<CMatrix>,
{
    if !(t_candidate >= t0 && t_candidate <= t_k) {
        return Err(Error::InvalidArgument(format!(
            "candidate {t_candidate} outside [{t0}, {t_k}]"
        )));
    }
    let ints = DefectIntegrals::new(model, t0, t_k, &mut u_ref)?;
    Ok(DefectReport {
        t_candidate,
        defect_rel: ints.defect(t_candidate, &mut u_ref)?,
    })
}

/// Time in `[t0, t_k]` minimising [`defect_rel`]: a 129-point scan, then
/// golden-section search inside the best bracket down to [`TIME_RESOLUTION`].
pub fn solve_mvt_time<U>(model: &HamiltonianModel, t0: f64, t_k: f64, mut u_ref: U) -> Result<DefectReport>
where
    U: FnMut(f64) -> Result<CMatrix>,
{
    let ints = DefectIntegrals::new(model, t0, t_k, &mut u_ref)?;
    let n = DEFECT_SCAN_POINTS - 1;
    let node = |k: usize| if k == n { t_k } else { t0 + (t_k - t0) * k as f64 / n as f64 };
    let mut best = (0usize, f64::INFINITY);
    for k in 0..=n {
        let d = ints.defect(node(k), &mut u_ref)?;
        if d < best.1 {
            best = (k, d);
        }
    }
    let mut lo = node(best.0.saturating_sub(1));
    let mut hi = node((best.0 + 1).min(n));
    let mut best_report = DefectReport {
        t_candidate: node(best.0),
        defect_rel: best.1,
    };

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = ints.defect(x1, &mut u_ref)?;
    let mut f2 = ints.defect(x2, &mut u_ref)?;
    while hi - lo > TIME_RESOLUTION {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = ints.defect(x1, &mut u_ref)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = ints.defect(x2, &mut u_ref)?;
        }
    }
    for (x, f) in [(x1, f1), (x2, f2)] {
        if f < best_report.defect_rel {
            best_report = DefectReport {
                t_candidate: x,
                defect_rel: f,
            };
        }
    }
    Ok(best_report)
}

/// Grid `t_1 > t_2 > … > t_n` where each `t_{k+1}` minimises the defect on
/// `[t0, t_k]` against the exact propagator.
pub fn mvt_optimal_grid(model: &HamiltonianModel, t0: f64, t1: f64, n: usize) -> Result<(TimeGrid, Vec<DefectReport>)> {
    if n < 2 {
        return Err(Error::InvalidArgument("an MVT grid needs at least two times".into()));
    }
    let traj = Trajectory::new(model, t0, t1, DEFAULT_PROPAGATOR_TOL)?;
    let mut points = vec![t1];
    let mut reports = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let t_k = *points.last().expect("seeded");
        let report = solve_mvt_time(model, t0, t_k, |s| traj.at(s))?;
        points.push(report.t_candidate);
        reports.push(report);
    }
    Ok((TimeGrid::new(t0, points)?, reports))
}

/// Closed-form minimum defect `1 − 2 sin(θ/2)/θ` for constant scalar models.
pub fn scalar_min_defect(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        let t2 = theta * theta;
        t2 / 24.0 - t2 * t2 / 1920.0
    } else {
        1.0 - 2.0 * (0.5 * theta).sin() / theta
    }
}

/// `|e^{−iθ/2}·2sin(θ/2)/θ − e^{−iθ s/t_k}|` for constant scalar models,
/// the defect at an arbitrary candidate `s`.
pub fn scalar_defect_closed_form(theta: f64, fraction: f64) -> f64 {
    let avg = Complex64::new(0.0, -0.5 * theta).exp() * (2.0 * (0.5 * theta).sin() / theta);
    (avg - Complex64::new(0.0, -theta * fraction).exp()).norm()
}
