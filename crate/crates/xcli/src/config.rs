// SPDX-License-Identifier: Apache-2.0

//! JSON model configuration.
//!
//! ```json
//! {"dim":1,"family":"scalar_profile","profile":{"kind":"const","c":1.0},"g":3.0,"window":[0.0,2.0]}
//! {"dim":2,"family":"two_level","a":2.0,"b":1.0,"g":1.0,"window":[0.0,3.0]}
//! {"dim":2,"family":"constant","a0":{"re":[[2,0],[0,1]],"im":[[0,0.5],[-0.5,0]]},"g":1.0,"window":[0,1]}
//! ```
//!
//! `two_level` also accepts `"omega"` (rotating transverse field, default 0).
//! Unknown keys are rejected.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use scx_core::numkit::CMatrix;
use scx_core::propagator::{build_model, HamiltonianModel, ModelDescription, ModelFamily, ScalarProfile};

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ProfileConfig {
    Const { c: f64 },
    Poly { alpha: f64 },
    Gauss { beta: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixConfig {
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
enum ModelConfig {
    ScalarProfile {
        dim: usize,
        g: f64,
        window: [f64; 2],
        profile: ProfileConfig,
    },
    TwoLevel {
        dim: usize,
        g: f64,
        window: [f64; 2],
        a: f64,
        b: f64,
        #[serde(default)]
        omega: f64,
    },
    Constant {
        dim: usize,
        g: f64,
        window: [f64; 2],
        a0: MatrixConfig,
    },
}

fn validation(field: &str, source: scx_core::Error) -> CliError {
    CliError::Validation {
        field: field.to_string(),
        source_name: source.name(),
        source,
    }
}

fn check_dim(declared: usize, actual: usize) -> Result<(), CliError> {
    if declared == actual {
        Ok(())
    } else {
        Err(validation(
            "dim",
            scx_core::Error::DimensionMismatch {
                expected: actual,
                found: declared,
            },
        ))
    }
}

fn matrix_from_config(m: &MatrixConfig) -> Result<CMatrix, CliError> {
    let dim = m.re.len();
    let im = m.im.clone().unwrap_or_else(|| vec![vec![0.0; dim]; dim]);
    if im.len() != dim {
        return Err(validation(
            "a0.im",
            scx_core::Error::DimensionMismatch {
                expected: dim,
                found: im.len(),
            },
        ));
    }
    let rows = m
        .re
        .iter()
        .zip(&im)
        .map(|(r, i)| {
            if r.len() != i.len() {
                return Err(validation(
                    "a0.im",
                    scx_core::Error::DimensionMismatch {
                        expected: r.len(),
                        found: i.len(),
                    },
                ));
            }
            Ok(r.iter().zip(i).map(|(&x, &y)| Complex64::new(x, y)).collect())
        })
        .collect::<Result<Vec<Vec<Complex64>>, CliError>>()?;
    CMatrix::from_rows(&rows).map_err(|e| validation("a0", e))
}

fn field_for(err: &scx_core::Error, family_field: &str) -> String {
    match err {
        scx_core::Error::BadWindow { .. } => "window".into(),
        scx_core::Error::InvalidArgument(msg) if msg.contains("coupling") => "g".into(),
        _ => family_field.into(),
    }
}

/// Parses a JSON model description and validates it.
pub fn parse_model_config(text: &str, origin: &Path) -> Result<HamiltonianModel, CliError> {
    let cfg: ModelConfig = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_path_buf(),
        message: e.to_string(),
    })?;
    let (desc, family_field) = match cfg {
        ModelConfig::ScalarProfile { dim, g, window, profile } => {
            check_dim(dim, 1)?;
            let p = match profile {
                ProfileConfig::Const { c } => ScalarProfile::Const { c },
                ProfileConfig::Poly { alpha } => ScalarProfile::Poly { alpha },
                ProfileConfig::Gauss { beta } => ScalarProfile::Gauss { beta },
            };
            (
                ModelDescription {
                    family: ModelFamily::ScalarProfile(p),
                    g,
                    window: (window[0], window[1]),
                },
                "profile",
            )
        }
        ModelConfig::TwoLevel { dim, g, window, a, b, omega } => {
            check_dim(dim, 2)?;
            (
                ModelDescription {
                    family: ModelFamily::TwoLevel { a, b, omega },
                    g,
                    window: (window[0], window[1]),
                },
                "a,b",
            )
        }
        ModelConfig::Constant { dim, g, window, a0 } => {
            let a0 = matrix_from_config(&a0)?;
            check_dim(dim, a0.dim())?;
            (
                ModelDescription {
                    family: ModelFamily::Constant { a0 },
                    g,
                    window: (window[0], window[1]),
                },
                "a0",
            )
        }
    };
    build_model(&desc).map_err(|e| {
        let field = field_for(&e, family_field);
        validation(&field, e)
    })
}

pub fn load_model_config(path: &Path) -> Result<HamiltonianModel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_model_config(&text, path)
}
