// SPDX-License-Identifier: Apache-2.0

//! Two toy iterations that show why the direction of an expansion matters.
//!
//! `x = 1 − a·x` can be iterated as `1 − a + a² − …` (converges for `|a| < 1`)
//! or, after dividing by `a`, as `1/a − 1/a² + …` (converges for `|a| > 1`).
//! Likewise `I_n = e^{-1} ∫₀¹ xⁿ eˣ dx` satisfies `I_n = 1 − n·I_{n−1}`: run
//! upward, an error in `I_0` is multiplied by `n!`; run downward from a crude
//! guess for `I_k`, the error is divided by `k!/n!`.

use crate::error::{Error, Result};
use crate::numkit::{quad_real, QuadratureSpec};

/// Partial sums beyond this magnitude stop the iteration and set the flag.
pub const DIVERGENCE_GUARD: f64 = 1e12;

/// Largest index accepted by [`in_oracle`].
pub const ORACLE_MAX_N: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionMode {
    /// Powers of `a`.
    Weak,
    /// Powers of `1/a`.
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricSeriesSpec {
    a: f64,
    mode: ExpansionMode,
    n_terms: usize,
}

impl GeometricSeriesSpec {
    pub fn new(a: f64, mode: ExpansionMode, n_terms: usize) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite("geometric coefficient"));
        }
        if a.abs() == 1.0 {
            return Err(Error::InvalidArgument("|a| must differ from 1".into()));
        }
        if mode == ExpansionMode::Strong && a == 0.0 {
            return Err(Error::InvalidArgument(
                "strong mode needs a nonzero coefficient".into(),
            ));
        }
        if n_terms == 0 {
            return Err(Error::InvalidArgument("n_terms must be at least 1".into()));
        }
        Ok(Self { a, mode, n_terms })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn mode(&self) -> ExpansionMode {
        self.mode
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    /// Fixed point of `x = 1 − a·x`.
    pub fn limit(&self) -> f64 {
        1.0 / (1.0 + self.a)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricSums {
    /// `sums[m − 1] = S_m`; shorter than requested when the guard fired.
    pub sums: Vec<f64>,
    pub diverged: bool,
    pub limit: f64,
}

impl GeometricSums {
    pub fn last(&self) -> f64 {
        *self.sums.last().expect("at least one partial sum")
    }
}

/// Partial sums `S_1..S_n` of the weak (`Σ (−a)^k`) or strong
/// (`Σ (−1)^{k−1} a^{−k}`) expansion of `1/(1 + a)`.
pub fn geometric_partial_sums(spec: &GeometricSeriesSpec) -> GeometricSums {
    let (first, ratio) = match spec.mode {
        ExpansionMode::Weak => (1.0, -spec.a),
        ExpansionMode::Strong => (1.0 / spec.a, -1.0 / spec.a),
    };
    let mut sums = Vec::with_capacity(spec.n_terms);
    let mut term = first;
    let mut acc = 0.0;
    let mut diverged = false;
    for _ in 0..spec.n_terms {
        acc += term;
        if !acc.is_finite() || acc.abs() > DIVERGENCE_GUARD {
            diverged = true;
            break;
        }
        sums.push(acc);
        term *= ratio;
    }
    GeometricSums {
        sums,
        diverged,
        limit: spec.limit(),
    }
}

/// `I_n = e^{-1} ∫₀¹ xⁿ eˣ dx` by quadrature at `rel_tol = 1e-13`.
pub fn in_oracle(n: u32) -> Result<f64> {
    if n > ORACLE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "oracle index {n} exceeds {ORACLE_MAX_N}"
        )));
    }
    let spec = QuadratureSpec::new(1e-13, 20)?;
    let k = n as i32;
    // x^n e^{x−1} keeps the integrand in [0, 1].
    quad_real(|x| x.powi(k) * (x - 1.0).exp(), 0.0, 1.0, &spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecursionTable {
    pub direction: Direction,
    /// Strictly increasing for forward tables, strictly decreasing for backward.
    pub indices: Vec<u32>,
    pub values: Vec<f64>,
    pub seed_index: u32,
    pub seed_value: f64,
}

impl RecursionTable {
    pub fn value_at(&self, n: u32) -> Option<f64> {
        self.indices
            .iter()
            .position(|&k| k == n)
            .map(|i| self.values[i])
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("non-empty table")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Runs `I_n = 1 − n·I_{n−1}` upward from `I_{start} = seed` to `n = stop`.
pub fn forward_recursion_from(start: u32, seed: f64, stop: u32) -> Result<RecursionTable> {
    if stop <= start {
        return Err(Error::InvalidArgument(format!(
            "forward recursion needs stop > start (got {start} -> {stop})"
        )));
    }
    let mut indices = vec![start];
    let mut values = vec![seed];
    let mut prev = seed;
    for n in start + 1..=stop {
        let next = 1.0 - n as f64 * prev;
        if !next.is_finite() {
            break;
        }
        indices.push(n);
        values.push(next);
        prev = next;
    }
    Ok(RecursionTable {
        direction: Direction::Forward,
        indices,
        values,
        seed_index: start,
        seed_value: seed,
    })
}

/// `I_1..I_{n_max}` from `I_0 = seed`, with no stabilisation.
pub fn forward_recursion(n_max: u32, seed_i0: f64) -> Result<RecursionTable> {
    forward_recursion_from(0, seed_i0, n_max)
}

/// Runs `I_{n−1} = (1 − I_n)/n` downward from `I_{n_start} = seed` to `n_stop`.
pub fn backward_recursion(n_start: u32, seed: f64, n_stop: u32) -> Result<RecursionTable> {
    if n_start <= n_stop {
        return Err(Error::InvalidArgument(format!(
            "backward recursion needs start > stop (got {n_start} -> {n_stop})"
        )));
    }
    if !seed.is_finite() {
        return Err(Error::NonFinite("recursion seed"));
    }
    let mut indices = vec![n_start];
    let mut values = vec![seed];
    let mut cur = seed;
    for n in (n_stop + 1..=n_start).rev() {
        cur = (1.0 - cur) / n as f64;
        indices.push(n - 1);
        values.push(cur);
    }
    Ok(RecursionTable {
        direction: Direction::Backward,
        indices,
        values,
        seed_index: n_start,
        seed_value: seed,
    })
}
