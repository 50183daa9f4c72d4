// SPDX-License-Identifier: Apache-2.0

//! Model Hamiltonians, the exact propagator and the weak-coupling series.

mod dyson;
mod evolution;
mod model;
mod series;

pub use dyson::{dyson_expansion, dyson_expansion_with_tol, dyson_term_oracle, MAX_DYSON_ORDER, MAX_ORACLE_ORDER};
pub use evolution::{
    exact_propagator, volterra_residual, PropagatorSample, Trajectory, DEFAULT_PROPAGATOR_TOL, MAX_STEP_DOUBLINGS,
};
pub use model::{
    build_model, min_eigenvalue_small, HamiltonianModel, ModelDescription, ModelFamily, ScalarProfile,
    POSITIVITY_SAMPLES,
};
pub use series::{SeriesKind, SeriesResult};
