// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the built `scx` binary.
pub fn scx<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scx"))
        .args(args)
        .output()
        .expect("failed to spawn scx")
}

/// A subcommand whose CSV output is pinned under `tests/golden/`.
pub struct GoldenCase {
    pub file: &'static str,
    args: Vec<String>,
}

impl GoldenCase {
    /// Full argv with `--out` pointing at `out`.
    pub fn argv(&self, out: &Path) -> Vec<String> {
        let mut v = self.args.clone();
        v.push("--out".into());
        v.push(out.display().to_string());
        v
    }
}

fn model(name: &str) -> String {
    fixture(name).display().to_string()
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        GoldenCase {
            file: "recursion_backward.csv",
            args: s(&["demo", "recursion", "--direction", "backward", "--start", "25", "--seed", "0", "--stop", "5"]),
        },
        GoldenCase {
            file: "recursion_forward.csv",
            args: s(&["demo", "recursion", "--direction", "forward", "--start", "0", "--stop", "20"]),
        },
        GoldenCase {
            file: "dyson_scalar_g05.csv",
            args: [s(&["propagate", "--model"]), vec![model("scalar_g05.json")], s(&["--method", "dyson", "--order", "3", "--t", "1"])].concat(),
        },
        GoldenCase {
            file: "dyson_two_level_g04.csv",
            args: [s(&["propagate", "--model"]), vec![model("two_level_g04.json")], s(&["--method", "dyson", "--order", "3", "--t", "1"])].concat(),
        },
        GoldenCase {
            file: "order_error_two_level.csv",
            args: [
                s(&["sweep", "--model"]),
                vec![model("two_level_g04.json")],
                s(&["--param", "g", "--values", "0.1,0.2,0.4", "--probe", "order-error", "--t", "1"]),
            ]
            .concat(),
        },
        GoldenCase {
            file: "strong_scalar_g3.csv",
            args: [
                s(&["strong", "--model"]),
                vec![model("scalar_g3.json")],
                s(&["--grid", "1.0,0.7", "--target", "0.5", "--seed-mode", "exact"]),
            ]
            .concat(),
        },
    ]
}

/// Parses a CSV written by `scx` into a header and numeric rows.
pub fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).expect("read csv");
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    (header, rows)
}

pub fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}
