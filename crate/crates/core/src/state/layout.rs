use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};

/// Largest total Hilbert-space dimension accepted for any state.
pub const MAX_DIM: usize = 64;

/// Ordered list of subsystems with their local dimensions.
///
/// Indices are row-major with the leftmost subsystem most significant: for
/// dims `[d0, d1, d2]` the basis state `|i0 i1 i2>` sits at
/// `(i0 * d1 + i1) * d2 + i2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl SubsystemLayout {
    pub fn new<S: Into<String>>(dims: Vec<usize>, labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if dims.is_empty() {
            return Err(QcorrError::Layout(
                "at least one subsystem is required".into(),
            ));
        }
        if dims.len() != labels.len() {
            return Err(QcorrError::Layout(format!(
                "{} dims but {} labels",
                dims.len(),
                labels.len()
            )));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(QcorrError::Layout(format!(
                "local dimension {d} is below 2"
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(QcorrError::Layout("empty subsystem label".into()));
            }
            if labels[..i].contains(l) {
                return Err(QcorrError::Layout(format!("duplicate label `{l}`")));
            }
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .unwrap_or(usize::MAX);
        if total > MAX_DIM {
            return Err(QcorrError::DimensionTooLarge {
                dim: total,
                max: MAX_DIM,
            });
        }
        Ok(Self { dims, labels })
    }

    /// All-qubit layout with the given labels.
    pub fn qubits(labels: &[&str]) -> Result<Self> {
        Self::new(vec![2; labels.len()], labels.to_vec())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| QcorrError::UnknownLabel(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.index_of(label)?])
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    /// Layout of `self` followed by `other`.
    pub fn concat(&self, other: &SubsystemLayout) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Self::new(dims, labels)
    }

    /// Resolves a label set to sorted, de-duplicated subsystem positions.
    pub fn positions(&self, labels: &[&str]) -> Result<Vec<usize>> {
        let mut pos = labels
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        pos.sort_unstable();
        pos.dedup();
        Ok(pos)
    }

    /// Sub-layout made of the subsystems at `positions` (kept in layout order).
    pub(crate) fn select(&self, positions: &[usize]) -> Self {
        Self {
            dims: positions.iter().map(|&p| self.dims[p]).collect(),
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
        }
    }

    /// Per-subsystem digits of a flat basis index.
    pub(crate) fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    /// Stride of subsystem `pos` in the flat index.
    pub(crate) fn stride(&self, pos: usize) -> usize {
        self.dims[pos + 1..].iter().product()
    }

    /// Joins several labels into a compact name, e.g. `["A","B"]` -> `"AB"`.
    pub fn joined(labels: &[&str]) -> String {
        labels.concat()
    }
}
