// SPDX-License-Identifier: Apache-2.0

//! Strong-coupling expansion in powers of `1/g`, and the mean-value
//! machinery that selects its intermediate times.

mod defect;
mod grid;
mod mvt;
mod unroll;

pub use defect::{
    defect_rel, mvt_optimal_grid, scalar_defect_closed_form, scalar_min_defect, solve_mvt_time, DefectReport,
    DEFECT_SCAN_POINTS, TIME_RESOLUTION,
};
pub use grid::TimeGrid;
pub use mvt::{mvt_point, MvtPoint, MvtProblem, MVT_SCAN_POINTS};
pub use unroll::{
    backward_map, compute_l, fold_backward, run_strong, strong_unroll, term_scaling_probe, ScalingRow, Seed,
    StrongRun,
};
