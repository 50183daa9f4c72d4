// SPDX-License-Identifier: Apache-2.0

//! Weak-coupling (Dyson) expansion of the propagator.
//!
//! The `n`-th term obeys `U_n(t) = −i ∫_{t0}^{t} H(s)·U_{n−1}(s) ds` with
//! `U_0 = I`, i.e. the time-ordered `n`-fold integral. All orders are stepped
//! together: on a step where `H` is frozen at its midpoint value the cascade
//! is solved exactly by `U_n ← Σ_k (−iHh)^k/k! · U_{n−k}`, which is the
//! midpoint-exponential step of [`super::exact_propagator`] expanded order by
//! order.

use num_complex::Complex64;

use super::evolution::{richardson, DEFAULT_PROPAGATOR_TOL, MAX_STEP_DOUBLINGS};
use super::model::HamiltonianModel;
use super::series::{SeriesKind, SeriesResult};
use crate::error::{Error, Result};
use crate::numkit::{quad_adaptive, CMatrix, QuadratureSpec};

pub const MAX_DYSON_ORDER: usize = 12;

/// Largest order supported by [`dyson_term_oracle`].
pub const MAX_ORACLE_ORDER: usize = 3;

const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

fn cascade(model: &HamiltonianModel, t: f64, t0: f64, order: usize, steps: usize) -> Result<Vec<CMatrix>> {
    let d = model.dim();
    let h = (t - t0) / steps as f64;
    let mut terms = vec![CMatrix::zeros(d)?; order + 1];
    terms[0] = CMatrix::identity(d)?;
    // powers[k] = (−iHh)^k / k!
    let mut powers = vec![CMatrix::identity(d)?; order + 1];
    for k in 0..steps {
        let hmid = model.eval_h(t0 + h * (k as f64 + 0.5))?;
        let gen = hmid.scale(MINUS_I * h);
        for j in 1..=order {
            powers[j] = (&powers[j - 1] * &gen).scale_real(1.0 / j as f64);
        }
        for n in (1..=order).rev() {
            let mut next = terms[n].clone();
            for j in 1..=n {
                next += &(&powers[j] * &terms[n - j]);
            }
            terms[n] = next;
        }
    }
    Ok(terms)
}

/// Dyson terms `U_0..U_order` at `t` with the default step tolerance.
pub fn dyson_expansion(model: &HamiltonianModel, t: f64, t0: f64, order: usize) -> Result<SeriesResult> {
    dyson_expansion_with_tol(model, t, t0, order, DEFAULT_PROPAGATOR_TOL)
}

/// As [`dyson_expansion`]; step count doubled (with the same extrapolation as
/// the exact propagator) until the summed change of all terms is at most
/// `tol · max(1, Σ‖U_n‖)`.
pub fn dyson_expansion_with_tol(
    model: &HamiltonianModel,
    t: f64,
    t0: f64,
    order: usize,
    tol: f64,
) -> Result<SeriesResult> {
    if order > MAX_DYSON_ORDER {
        return Err(Error::InvalidArgument(format!(
            "Dyson order {order} exceeds {MAX_DYSON_ORDER}"
        )));
    }
    model.check_in_window(t0)?;
    model.check_in_window(t)?;
    if t < t0 {
        return Err(Error::InvalidArgument(format!(
            "Dyson expansion needs t0 <= t (got t0 = {t0}, t = {t})"
        )));
    }
    if t == t0 || order == 0 {
        let mut terms = vec![CMatrix::zeros(model.dim())?; order + 1];
        terms[0] = CMatrix::identity(model.dim())?;
        return SeriesResult::from_terms(SeriesKind::Dyson, terms);
    }

    let extrapolate = |fine: &[CMatrix], coarse: &[CMatrix]| -> Vec<CMatrix> {
        fine.iter().zip(coarse).map(|(f, c)| richardson(f, c)).collect()
    };
    let mut steps = 2usize;
    let mut fine = cascade(model, t, t0, order, steps)?;
    let mut prev = extrapolate(&fine, &cascade(model, t, t0, order, 1)?);
    let mut change = f64::INFINITY;
    for _ in 0..MAX_STEP_DOUBLINGS {
        steps *= 2;
        let coarse = fine;
        fine = cascade(model, t, t0, order, steps)?;
        let next = extrapolate(&fine, &coarse);
        change = next.iter().zip(&prev).map(|(a, b)| a.distance(b)).sum();
        let scale: f64 = next.iter().map(CMatrix::norm).sum();
        if change <= tol * scale.max(1.0) {
            return SeriesResult::from_terms(SeriesKind::Dyson, next);
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        what: "dyson_expansion",
        iterations: MAX_STEP_DOUBLINGS,
        last_change: change,
    })
}

fn nested_integral(model: &HamiltonianModel, t0: f64, upper: f64, depth: usize, spec: &QuadratureSpec) -> Result<CMatrix> {
    if depth == 0 {
        return CMatrix::identity(model.dim());
    }
    quad_adaptive(
        |s| {
            let inner = nested_integral(model, t0, s, depth - 1, spec)?;
            Ok(&model.eval_h(s)? * &inner)
        },
        t0,
        upper,
        spec,
    )
}

/// `n`-th Dyson term by direct nested quadrature,
/// `(−i)^n ∫_{t0}^{t} dt₁ ∫_{t0}^{t₁} dt₂ … H(t₁)…H(tₙ)`.
///
/// Cost grows like `q^n` in the node count, so `n <= 3`.
pub fn dyson_term_oracle(model: &HamiltonianModel, t: f64, t0: f64, n: usize) -> Result<CMatrix> {
    if n > MAX_ORACLE_ORDER {
        return Err(Error::InvalidArgument(format!(
            "nested-quadrature oracle limited to n <= {MAX_ORACLE_ORDER}"
        )));
    }
    model.check_in_window(t0)?;
    model.check_in_window(t)?;
    if t < t0 {
        return Err(Error::InvalidArgument("oracle needs t0 <= t".into()));
    }
    let spec = QuadratureSpec::new(1e-12, 12)?;
    let integral = nested_integral(model, t0, t, n, &spec)?;
    Ok(integral.scale(MINUS_I.powu(n as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::evolution::{exact_propagator, volterra_residual};
    use crate::propagator::model::{build_model, ModelDescription, ModelFamily, ScalarProfile};

    fn scalar(profile: ScalarProfile, g: f64) -> HamiltonianModel {
        build_model(&ModelDescription {
            family: ModelFamily::ScalarProfile(profile),
            g,
            window: (0.0, 3.0),
        })
        .unwrap()
    }

    fn two_level(a: f64, b: f64, omega: f64, g: f64) -> HamiltonianModel {
        build_model(&ModelDescription {
            family: ModelFamily::TwoLevel { a, b, omega },
            g,
            window: (0.0, 3.0),
        })
        .unwrap()
    }

    #[test]
    fn order_zero_is_identity() {
        let s = dyson_expansion(&two_level(2.0, 1.0, 0.5, 1.0), 1.0, 0.0, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms[0], CMatrix::identity(2).unwrap());
    }

    #[test]
    fn scalar_second_order_partial_sum() {
        let s = dyson_expansion(&scalar(ScalarProfile::Const { c: 1.0 }, 0.5), 1.0, 0.0, 2).unwrap();
        let z = s.total()[(0, 0)];
        assert!((z - Complex64::new(0.875, -0.5)).norm() < 1e-12, "{z}");
    }

    #[test]
    fn first_order_constant_two_level() {
        let m = two_level(2.0, 1.0, 0.0, 1.0);
        let t = 0.8;
        let s = dyson_expansion(&m, t, 0.0, 1).unwrap();
        let mut want = CMatrix::identity(2).unwrap();
        want.axpy(Complex64::new(0.0, -t), &m.eval_h(0.0).unwrap());
        assert!(s.total().distance(&want) < 1e-13);
    }

    #[test]
    fn scalar_poly_terms_match_closed_form() {
        // ∫₀ᵗ g(1+s²) ds = g(t + t³/3) =: φ; U_n = (−iφ)^n / n!
        let g = 0.7;
        let t = 1.2;
        let phi = g * (t + t * t * t / 3.0);
        let s = dyson_expansion(&scalar(ScalarProfile::Poly { alpha: 1.0 }, g), t, 0.0, 5).unwrap();
        let mut want = Complex64::new(1.0, 0.0);
        for n in 0..=5 {
            if n > 0 {
                want *= Complex64::new(0.0, -phi) / n as f64;
            }
            assert!((s.terms[n][(0, 0)] - want).norm() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn oracle_first_and_second_order() {
        let m = scalar(ScalarProfile::Const { c: 1.0 }, 1.7);
        let t = 0.9;
        let o1 = dyson_term_oracle(&m, t, 0.0, 1).unwrap();
        assert!((o1[(0, 0)] - Complex64::new(0.0, -1.7 * t)).norm() < 1e-13);
        let o2 = dyson_term_oracle(&m, t, 0.0, 2).unwrap();
        let want = Complex64::new(0.0, -1.7 * t).powu(2) / 2.0;
        assert!((o2[(0, 0)] - want).norm() < 1e-12);
        assert!(dyson_term_oracle(&m, t, 0.0, 4).is_err());
    }

    #[test]
    fn oracle_agrees_with_cascade_on_rotating_two_level() {
        let m = two_level(1.6, 0.9, 1.4, 0.8);
        let t = 1.3;
        let s = dyson_expansion(&m, t, 0.2, 3).unwrap();
        for n in 0..=3 {
            let o = dyson_term_oracle(&m, t, 0.2, n).unwrap();
            assert!(o.distance(&s.terms[n]) < 1e-9, "n = {n}: {}", o.distance(&s.terms[n]));
        }
    }

    #[test]
    fn residual_of_partial_sum_is_next_term() {
        let m = scalar(ScalarProfile::Const { c: 1.0 }, 0.5);
        let history = |s: f64| -> Result<CMatrix> { Ok(dyson_expansion(&m, s, 0.0, 2)?.total().clone()) };
        let s2 = dyson_expansion(&m, 1.0, 0.0, 3).unwrap();
        let r = volterra_residual(&m, &s2.partial_sums[2], history, 1.0, 0.0).unwrap();
        assert!((r - 0.125 / 6.0).abs() < 1e-12, "{r}");
        assert!((r - s2.term_norms[3]).abs() < 1e-12);
    }

    #[test]
    fn high_order_sum_approaches_exact() {
        // truncation error ≈ (g·‖A‖)^13 / 13! ≈ 4e-11
        let m = two_level(2.0, 1.0, 0.9, 0.3);
        let s = dyson_expansion(&m, 1.0, 0.0, 12).unwrap();
        let u = exact_propagator(&m, 1.0, 0.0, 1e-11).unwrap().u;
        assert!(s.total().distance(&u) < 1e-9);
    }
}
