// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::numkit::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Powers of `g`.
    Dyson,
    /// Powers of `1/g`.
    Strong,
}

/// Terms of an expansion with their running sums and norms.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<CMatrix>,
    /// `partial_sums[m] = Σ_{j <= m} terms[j]`.
    pub partial_sums: Vec<CMatrix>,
    /// Frobenius norms of `terms`.
    pub term_norms: Vec<f64>,
    pub reference: Option<CMatrix>,
    /// `‖partial_sums[m] − reference‖_F`, present with a reference.
    pub errors: Option<Vec<f64>>,
}

impl SeriesResult {
    pub fn from_terms(kind: SeriesKind, terms: Vec<CMatrix>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("a series needs at least one term".into()))?;
        let mut acc = CMatrix::zeros(first.dim())?;
        let mut partial_sums = Vec::with_capacity(terms.len());
        for term in &terms {
            acc += term;
            partial_sums.push(acc.clone());
        }
        let term_norms = terms.iter().map(CMatrix::norm).collect();
        Ok(Self {
            kind,
            terms,
            partial_sums,
            term_norms,
            reference: None,
            errors: None,
        })
    }

    pub fn with_reference(mut self, reference: CMatrix) -> Self {
        self.errors = Some(self.partial_sums.iter().map(|s| s.distance(&reference)).collect());
        self.reference = Some(reference);
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The full sum.
    pub fn total(&self) -> &CMatrix {
        self.partial_sums.last().expect("non-empty series")
    }
}
