// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// Intermediate times `t0 <= t_n <= … <= t_2 <= t_1`, stored as
/// `(t_1, …, t_n)` with `t_1` largest.
///
/// `t_1` carries the seed `u(t_1, t0)`, `t_1..t_{n−1}` are where `L` is
/// evaluated, and `t_n` is the target time.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    points: Vec<f64>,
}

impl TimeGrid {
    pub fn new(t0: f64, points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a grid needs at least two times, got {}",
                points.len()
            )));
        }
        if !t0.is_finite() || points.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite("grid times"));
        }
        if points.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidArgument(
                "grid times must be non-increasing (t_1 first)".into(),
            ));
        }
        if points[0] <= t0 {
            return Err(Error::InvalidArgument(format!(
                "t_1 = {} must exceed t0 = {t0}",
                points[0]
            )));
        }
        let last = *points.last().expect("len >= 2");
        if last < t0 {
            return Err(Error::InvalidArgument(format!(
                "target t_n = {last} lies before t0 = {t0}"
            )));
        }
        Ok(Self { t0, points })
    }

    /// `L` times `t_1..t_{n−1}` followed by the target `t_n`.
    pub fn with_target(t0: f64, l_times: &[f64], target: f64) -> Result<Self> {
        let mut points = l_times.to_vec();
        points.push(target);
        Self::new(t0, points)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// `(t_1, …, t_n)`.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Number of times `n`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `t_k`, 1-based as in the expansion.
    pub fn t(&self, k: usize) -> f64 {
        self.points[k - 1]
    }

    pub fn seed_time(&self) -> f64 {
        self.points[0]
    }

    pub fn target(&self) -> f64 {
        *self.points.last().expect("len >= 2")
    }
}
