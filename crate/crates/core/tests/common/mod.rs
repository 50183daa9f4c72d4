// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use scx_core::numkit::CMatrix;
use scx_core::propagator::{build_model, HamiltonianModel, ModelDescription, ModelFamily, ScalarProfile};
use scx_core::strong_expansion::TimeGrid;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_matrix<R: Rng>(rng: &mut R, d: usize, scale: f64) -> CMatrix {
    let data = (0..d * d)
        .map(|_| c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
        .collect();
    CMatrix::from_vec(d, data).unwrap()
}

/// `B·B† + δI`, Hermitian positive definite.
pub fn random_hpd<R: Rng>(rng: &mut R, d: usize) -> CMatrix {
    let b = random_matrix(rng, d, 1.0);
    let mut m = &b * &b.adjoint();
    m.axpy(c(rng.gen_range(0.1..1.0), 0.0), &CMatrix::identity(d).unwrap());
    m
}

/// A random model of dimension 1 or 2 on the window `[0, 3]`.
pub fn random_model<R: Rng>(rng: &mut R) -> HamiltonianModel {
    let g = rng.gen_range(0.3..4.0);
    let family = match rng.gen_range(0..4) {
        0 => ModelFamily::ScalarProfile(ScalarProfile::Const { c: rng.gen_range(0.5..2.0) }),
        1 => ModelFamily::ScalarProfile(ScalarProfile::Poly { alpha: rng.gen_range(0.0..1.0) }),
        2 => ModelFamily::ScalarProfile(ScalarProfile::Gauss { beta: rng.gen_range(0.1..1.0) }),
        _ => {
            let a = rng.gen_range(1.0..2.5);
            ModelFamily::TwoLevel {
                a,
                b: rng.gen_range(-0.9..0.9) * a,
                omega: rng.gen_range(0.0..2.0),
            }
        }
    };
    build_model(&ModelDescription {
        family,
        g,
        window: (0.0, 3.0),
    })
    .unwrap()
}

/// `n` descending times in `(0, 3]` with the first bounded away from `t0 = 0`.
pub fn random_grid<R: Rng>(rng: &mut R, n: usize) -> TimeGrid {
    let mut pts: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..3.0)).collect();
    pts.sort_by(|a, b| b.partial_cmp(a).unwrap());
    TimeGrid::new(0.0, pts).unwrap()
}

/// Least-squares slope of `log2 y` against `log2 x`.
pub fn log2_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.log2()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.log2()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
