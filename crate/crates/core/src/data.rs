use alloc::vec::Vec;

use crate::error::{MrcError, Result};

/// Labeled training samples: `n` rows of `dim` real features and a class
/// index in `0..num_classes` per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    dim: usize,
    labels: Vec<usize>,
    num_classes: usize,
}

impl Dataset {
    /// Builds a dataset from row-major instance values.
    pub fn new(values: Vec<f64>, dim: usize, labels: Vec<usize>, num_classes: usize) -> Result<Self> {
        if num_classes < 2 {
            return Err(MrcError::TooFewClasses(num_classes));
        }
        if labels.is_empty() {
            return Err(MrcError::EmptyDataset);
        }
        if values.len() != labels.len() * dim {
            return Err(MrcError::DimensionMismatch {
                expected: labels.len() * dim,
                found: values.len(),
            });
        }
        if let Some(&index) = labels.iter().find(|&&l| l >= num_classes) {
            return Err(MrcError::LabelOutOfRange { index, num_classes });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(MrcError::NonFinite {
                row: pos / dim.max(1),
                col: pos % dim.max(1),
            });
        }
        Ok(Self {
            values,
            dim,
            labels,
            num_classes,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>], labels: Vec<usize>, num_classes: usize) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(MrcError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let values = rows.iter().flatten().copied().collect();
        Self::new(values, dim, labels, num_classes)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.len()).map(move |i| self.row(i))
    }

    /// Copies the rows at `indices` into a new dataset.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(indices.len() * self.dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            values.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Self::new(values, self.dim, labels, self.num_classes)
    }
}
