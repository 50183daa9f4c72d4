// SPDX-License-Identifier: Apache-2.0

//! Small dense complex matrices.
//!
//! `CMatrix` is a row-major `d × d` block of [`Complex64`] with `1 <= d <= 8`.
//! Every constructor rejects non-finite entries, so any matrix that exists is
//! finite. Arithmetic operators panic on dimension mismatch, like slices do on
//! out-of-range indices; the fallible entry points live in `linalg`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(dim))
    }
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// `z · I`.
    pub fn scalar(dim: usize, z: Complex64) -> Result<Self> {
        Ok(Self::identity(dim)? * z)
    }

    pub fn from_diag(diag: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, z) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = *z;
        }
        m.ensure_finite()?;
        Ok(m)
    }

    /// Builds from row-major entries; `data.len()` must be a perfect square.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        let m = Self { dim, data };
        m.ensure_finite()?;
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(dim, data)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite("matrix entries"))
        }
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = self.clone();
        for i in 0..d {
            for j in 0..d {
                out.data[i * d + j] = self.data[j * d + i].conj();
            }
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * z).collect(),
        }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * x).collect(),
        }
    }

    /// `self += alpha · other`.
    pub fn axpy(&mut self, alpha: Complex64, other: &CMatrix) {
        assert_eq!(self.dim, other.dim, "dimension mismatch in axpy");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    /// `‖self − other‖_F`.
    pub fn distance(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in distance");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖self† · self − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = &self.adjoint() * self;
        let id = CMatrix::identity(self.dim).expect("dimension already validated");
        prod.distance(&id)
    }

    /// Largest entrywise deviation from conjugate symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.dim && j < self.dim, "index out of bounds");
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.dim && j < self.dim, "index out of bounds");
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: CMatrix) -> CMatrix {
        &self + &rhs
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in mul");
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        CMatrix { dim: d, data }
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: CMatrix) -> CMatrix {
        &self * &rhs
    }
}

impl Mul<Complex64> for CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: Complex64) -> CMatrix {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: Complex64) -> CMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: f64) -> CMatrix {
        self.scale_real(rhs)
    }
}

impl Mul<f64> for CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: f64) -> CMatrix {
        self.scale_real(rhs)
    }
}
