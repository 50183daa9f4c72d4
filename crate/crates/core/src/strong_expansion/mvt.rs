// SPDX-License-Identifier: Apache-2.0

//! Weighted mean value points: `c` with `∫ f·w = f(c) ∫ w`.

use crate::error::{Error, Result};
use crate::numkit::{quad_real, QuadratureSpec};

/// Uniform scan size used to bracket `f(x) − mean`.
pub const MVT_SCAN_POINTS: usize = 257;

/// A real continuous `f` and a weight `w >= 0` on `[a, b]`.
#[derive(Debug, Clone, Copy)]
pub struct MvtProblem<F, W> {
    pub f: F,
    pub w: W,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MvtPoint {
    pub c: f64,
    /// `∫ f·w / ∫ w`.
    pub mean: f64,
    pub weight_integral: f64,
    /// False when the scan found no sign change of `f − mean`; `c` is then
    /// the interval midpoint (`f` is numerically constant there).
    pub bracketed: bool,
}

impl<F, W> MvtProblem<F, W>
where
    F: Fn(f64) -> f64,
    W: Fn(f64) -> f64,
{
    pub fn new(f: F, w: W, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::InvalidArgument(format!("MVT interval [{a}, {b}] must satisfy a < b")));
        }
        Ok(Self { f, w, a, b })
    }

    fn sample(&self, k: usize) -> f64 {
        let n = (MVT_SCAN_POINTS - 1) as f64;
        if k == MVT_SCAN_POINTS - 1 {
            self.b
        } else {
            self.a + (self.b - self.a) * k as f64 / n
        }
    }
}

/// Finds `c ∈ [a, b]` with `|f(c) − ∫fw/∫w| <= tol` by a 257-point scan
/// followed by bisection.
///
/// A scan without a sign change is reported as [`Error::NoSignChange`] only
/// when `f` is not numerically constant; otherwise the midpoint is returned
/// with `bracketed = false`.
pub fn mvt_point<F, W>(problem: &MvtProblem<F, W>, tol: f64) -> Result<MvtPoint>
where
    F: Fn(f64) -> f64,
    W: Fn(f64) -> f64,
{
    let (a, b) = (problem.a, problem.b);
    for k in 0..MVT_SCAN_POINTS {
        let x = problem.sample(k);
        let wx = (problem.w)(x);
        if !(wx >= 0.0) {
            return Err(Error::InvalidArgument(format!("weight is negative ({wx}) at x = {x}")));
        }
    }
    let spec = QuadratureSpec::new(1e-13, 20)?;
    let weight_integral = quad_real(&problem.w, a, b, &spec)?;
    if !(weight_integral > 0.0) {
        return Err(Error::InvalidArgument("weight integrates to zero".into()));
    }
    let fw = quad_real(|x| (problem.f)(x) * (problem.w)(x), a, b, &spec)?;
    let mean = fw / weight_integral;
    let resid = |x: f64| (problem.f)(x) - mean;

    let samples: Vec<(f64, f64)> = (0..MVT_SCAN_POINTS)
        .map(|k| {
            let x = problem.sample(k);
            (x, resid(x))
        })
        .collect();
    if samples.iter().any(|(_, r)| !r.is_finite()) {
        return Err(Error::NonFinite("MVT integrand"));
    }
    let point = |c: f64, bracketed: bool| MvtPoint {
        c,
        mean,
        weight_integral,
        bracketed,
    };

    if let Some(&(x, _)) = samples.iter().find(|(_, r)| r.abs() <= tol) {
        return Ok(point(x, true));
    }
    let bracket = samples.windows(2).find(|p| p[0].1.signum() != p[1].1.signum());
    let Some(pair) = bracket else {
        let spread = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
        if spread <= 1e-12 * mean.abs().max(1.0) {
            return Ok(point(0.5 * (a + b), false));
        }
        return Err(Error::NoSignChange);
    };
    let (mut lo, mut r_lo) = pair[0];
    let (mut hi, _) = pair[1];
    let min_width = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
    loop {
        let mid = 0.5 * (lo + hi);
        let r_mid = resid(mid);
        if r_mid.abs() <= tol || hi - lo <= min_width {
            return Ok(point(mid, true));
        }
        if r_mid.signum() == r_lo.signum() {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
        }
    }
}
