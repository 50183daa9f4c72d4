// SPDX-License-Identifier: Apache-2.0

//! The strong-coupling series.
//!
//! Writing `∫_{t0}^{t_k} H(t)·u(t) dt ≈ u(t_{k+1})·∫_{t0}^{t_k} H(t) dt` turns the
//! integral equation `u(t_k) = I − i∫H·u` into `u(t_k) = I − L_k·u(t_{k+1})`
//! with `L_k = i∫_{t0}^{t_k} H`. Solving for the earlier time gives the
//! backward map `u_{k+1} = L_k⁻¹ (I − u_k)`; unrolling it from a known
//! `u(t_1)` down to `t_n` gives
//!
//! ```text
//! u(t_n) = Σ_{j=1}^{n−1} (−1)^{j−1} L⁻¹(t_{n−1})…L⁻¹(t_{n−j})
//!        + (−1)^{n−1} L⁻¹(t_{n−1})…L⁻¹(t_1) · u(t_1)
//! ```
//!
//! Each `L⁻¹` carries a factor `1/g`, so the `j`-th term is `O(g^{−j})`.

use num_complex::Complex64;

use super::grid::TimeGrid;
use crate::error::{Error, Result};
use crate::numkit::{mat_inverse, quad_adaptive, CMatrix, QuadratureSpec};
use crate::propagator::{exact_propagator, HamiltonianModel, SeriesKind, SeriesResult, DEFAULT_PROPAGATOR_TOL};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `L(t_j, t0) = i ∫_{t0}^{t_j} H(t) dt`.
pub fn compute_l(model: &HamiltonianModel, t_j: f64, t0: f64) -> Result<CMatrix> {
    model.check_in_window(t0)?;
    model.check_in_window(t_j)?;
    if t_j < t0 {
        return Err(Error::InvalidArgument(format!(
            "L needs t0 <= t_j (got t0 = {t0}, t_j = {t_j})"
        )));
    }
    if t_j == t0 {
        return Err(Error::SingularMatrix {
            pivot: 0.0,
            threshold: 0.0,
        });
    }
    let integral: CMatrix = quad_adaptive(|t| model.eval_h(t), t0, t_j, &QuadratureSpec::default())?;
    Ok(integral.scale(I))
}

/// One backward step `u_{k+1} = L_k⁻¹ (I − u_k)`.
pub fn backward_map(u_k: &CMatrix, l_k: &CMatrix) -> Result<CMatrix> {
    if u_k.dim() != l_k.dim() {
        return Err(Error::DimensionMismatch {
            expected: l_k.dim(),
            found: u_k.dim(),
        });
    }
    let inv = mat_inverse(l_k)?;
    let rhs = &CMatrix::identity(u_k.dim())? - u_k;
    Ok(&inv * &rhs)
}

/// `L(t_1), …, L(t_{n−1})`.
fn l_operators(model: &HamiltonianModel, grid: &TimeGrid) -> Result<Vec<CMatrix>> {
    grid.points()[..grid.len() - 1]
        .iter()
        .map(|&t| compute_l(model, t, grid.t0()))
        .collect()
}

/// Iterates `u_1 = seed, u_2, …, u_n` of the backward map along the grid.
pub fn fold_backward(model: &HamiltonianModel, grid: &TimeGrid, u1: &CMatrix) -> Result<Vec<CMatrix>> {
    check_seed(model, u1)?;
    let ls = l_operators(model, grid)?;
    let mut iterates = Vec::with_capacity(grid.len());
    iterates.push(u1.clone());
    for l in &ls {
        let next = backward_map(iterates.last().expect("seeded"), l)?;
        iterates.push(next);
    }
    Ok(iterates)
}

fn check_seed(model: &HamiltonianModel, u1: &CMatrix) -> Result<()> {
    if u1.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: u1.dim(),
        });
    }
    Ok(())
}

/// The `n − 1` pure-product terms `(−1)^{j−1} L⁻¹(t_{n−1})…L⁻¹(t_{n−j})`
/// and the full product `L⁻¹(t_{n−1})…L⁻¹(t_1)`.
fn product_terms(model: &HamiltonianModel, grid: &TimeGrid) -> Result<(Vec<CMatrix>, CMatrix)> {
    let inverses = l_operators(model, grid)?
        .iter()
        .map(mat_inverse)
        .collect::<Result<Vec<_>>>()?;
    let n = grid.len();
    let mut terms = Vec::with_capacity(n - 1);
    let mut product = CMatrix::identity(model.dim())?;
    for j in 1..n {
        // inverses[i] is L⁻¹(t_{i+1})
        product = &product * &inverses[n - j - 1];
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        terms.push(product.scale_real(sign));
    }
    Ok((terms, product))
}

/// Explicit strong-coupling sum at the grid target `t_n`: the `n − 1`
/// product terms followed by the seed-carrying remainder.
pub fn strong_unroll(model: &HamiltonianModel, grid: &TimeGrid, u1: &CMatrix) -> Result<SeriesResult> {
    check_seed(model, u1)?;
    let (mut terms, product) = product_terms(model, grid)?;
    let sign = if grid.len() % 2 == 0 { -1.0 } else { 1.0 };
    terms.push((&product * u1).scale_real(sign));
    SeriesResult::from_terms(SeriesKind::Strong, terms)
}

/// Where `u(t_1, t0)` comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Seed {
    /// The exact propagator at `t_1`.
    Exact,
    /// A caller-supplied matrix.
    Value(CMatrix),
}

/// A strong-coupling evaluation together with its references.
#[derive(Debug, Clone)]
pub struct StrongRun {
    pub grid: TimeGrid,
    /// Explicit sum; `reference` holds the exact `u(t_n, t0)`.
    pub series: SeriesResult,
    /// Backward-map iterates `u_1..u_n`.
    pub iterates: Vec<CMatrix>,
    /// Exact `u(t_k, t0)` at every grid time.
    pub exact: Vec<CMatrix>,
}

impl StrongRun {
    /// `‖strong sum − fold‖_F`, zero up to round-off.
    pub fn unroll_fold_gap(&self) -> f64 {
        self.series.total().distance(self.iterates.last().expect("non-empty"))
    }
}

pub fn run_strong(model: &HamiltonianModel, grid: &TimeGrid, seed: &Seed) -> Result<StrongRun> {
    let exact = grid
        .points()
        .iter()
        .map(|&t| exact_propagator(model, t, grid.t0(), DEFAULT_PROPAGATOR_TOL).map(|s| s.u))
        .collect::<Result<Vec<_>>>()?;
    let u1 = match seed {
        Seed::Exact => exact[0].clone(),
        Seed::Value(u) => u.clone(),
    };
    let series = strong_unroll(model, grid, &u1)?.with_reference(exact.last().expect("len >= 2").clone());
    let iterates = fold_backward(model, grid, &u1)?;
    Ok(StrongRun {
        grid: grid.clone(),
        series,
        iterates,
        exact,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub factor: f64,
    pub coupling: f64,
    /// Term index `j`, `1..n−1`.
    pub j: usize,
    pub norm: f64,
    /// `norm / norm at factor 1`.
    pub ratio: f64,
    /// `factor^{−j}`.
    pub expected: f64,
}

/// Norms of the pure-product terms when the coupling is rescaled by each
/// factor. Rows are ordered by factor (as given), then by `j`.
pub fn term_scaling_probe(model: &HamiltonianModel, grid: &TimeGrid, factors: &[f64]) -> Result<Vec<ScalingRow>> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("no scaling factors given".into()));
    }
    if let Some(bad) = factors.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(Error::InvalidArgument(format!("scaling factor {bad} must be positive")));
    }
    let base: Vec<f64> = product_terms(model, grid)?.0.iter().map(CMatrix::norm).collect();
    let mut rows = Vec::with_capacity(factors.len() * base.len());
    for &factor in factors {
        let scaled = model.with_coupling(model.g() * factor)?;
        let norms: Vec<f64> = product_terms(&scaled, grid)?.0.iter().map(CMatrix::norm).collect();
        for (idx, (norm, base_norm)) in norms.iter().zip(&base).enumerate() {
            let j = idx + 1;
            rows.push(ScalingRow {
                factor,
                coupling: scaled.g(),
                j,
                norm: *norm,
                ratio: norm / base_norm,
                expected: factor.powi(-(j as i32)),
            });
        }
    }
    Ok(rows)
}
