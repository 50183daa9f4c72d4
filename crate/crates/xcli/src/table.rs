// SPDX-License-Identifier: Apache-2.0

//! Result tables and their CSV form.
//!
//! CSV rules: header row always present, `\n` line endings, integers in plain
//! decimal, reals as 17-significant-digit scientific (`{:.16e}`), which parses
//! back to the identical `f64`. A complex column `u` becomes `u_re,u_im`.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::CliError;
use crate::svg::{self, PlotSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Int,
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Complex(Complex64),
}

impl Value {
    fn kind(&self) -> ColumnKind {
        match self {
            Value::Int(_) => ColumnKind::Int,
            Value::Real(_) => ColumnKind::Real,
            Value::Complex(_) => ColumnKind::Complex,
        }
    }

    /// Numeric value used for plotting; complex values plot their modulus.
    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Int(i) => i as f64,
            Value::Real(x) => x,
            Value::Complex(z) => z.norm(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    columns: Vec<(String, ColumnKind)>,
    rows: Vec<Vec<Value>>,
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

impl ResultTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = (S, ColumnKind)>) -> Self {
        Self {
            columns: columns.into_iter().map(|(n, k)| (n.into(), k)).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics if it does not match the header, which is a
    /// programming error in the experiment that built it.
    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row arity does not match header");
        for (v, (name, kind)) in row.iter().zip(&self.columns) {
            assert_eq!(v.kind(), *kind, "column {name} has the wrong type");
        }
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(n, _)| n == name)
    }

    pub fn header(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, kind) in &self.columns {
            match kind {
                ColumnKind::Complex => {
                    out.push(format!("{name}_re"));
                    out.push(format!("{name}_im"));
                }
                _ => out.push(name.clone()),
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header().join(",");
        s.push('\n');
        for row in &self.rows {
            let mut first = true;
            for v in row {
                let cells: Vec<String> = match *v {
                    Value::Int(i) => vec![i.to_string()],
                    Value::Real(x) => vec![format_real(x)],
                    Value::Complex(z) => vec![format_real(z.re), format_real(z.im)],
                };
                for cell in cells {
                    if !first {
                        s.push(',');
                    }
                    first = false;
                    let _ = write!(s, "{cell}");
                }
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OutputFormat {
    Csv,
    CsvSvg { svg_path: std::path::PathBuf, plot: PlotSpec },
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn emit_table(table: &ResultTable, path: &Path, format: &OutputFormat) -> Result<(), CliError> {
    write_file(path, &table.to_csv())?;
    if let OutputFormat::CsvSvg { svg_path, plot } = format {
        write_file(svg_path, &svg::render(table, plot))?;
    }
    Ok(())
}
