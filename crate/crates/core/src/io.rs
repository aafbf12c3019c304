//! JSON state/unitary file format.
//!
//! ```json
//! { "dims": [2, 2], "labels": ["A", "B"], "kind": "density",
//!   "entries": [[0.5, 0.0], [0.0, 0.0], ...] }
//! ```
//!
//! `entries` holds `[re, im]` pairs, flattened row-major. Pure states carry
//! `D` entries, density matrices and unitaries `D * D`. For unitaries `dims`
//! and `labels` may be omitted.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::linalg::{c, CMatrix, CVector};
use crate::state::{DensityMatrix, PureState, QuantumState, SubsystemLayout, UnitaryMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Density,
    Pure,
    Unitary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub kind: StateKind,
    pub entries: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(state: &QuantumState) -> Self {
        let layout = state.layout();
        let (kind, entries) = match state {
            QuantumState::Pure(p) => (
                StateKind::Pure,
                p.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
            ),
            QuantumState::Mixed(m) => (StateKind::Density, row_major(m.entries())),
        };
        Self {
            dims: layout.dims().to_vec(),
            labels: layout.labels().to_vec(),
            kind,
            entries,
        }
    }

    pub fn from_unitary(u: &UnitaryMatrix) -> Self {
        Self {
            dims: vec![u.dim()],
            labels: vec![],
            kind: StateKind::Unitary,
            entries: row_major(u.entries()),
        }
    }

    /// Validates and converts into a state. Unitary files are rejected here.
    pub fn into_state(self) -> Result<QuantumState> {
        let layout = SubsystemLayout::new(self.dims.clone(), self.labels.clone())?;
        let d = layout.total_dim();
        match self.kind {
            StateKind::Pure => {
                expect_len(&self.entries, d)?;
                let v = CVector::from_iterator(d, self.entries.iter().map(|&[re, im]| c(re, im)));
                Ok(QuantumState::Pure(PureState::new(v, layout)?))
            }
            StateKind::Density => {
                expect_len(&self.entries, d * d)?;
                Ok(QuantumState::Mixed(DensityMatrix::new(
                    square(&self.entries, d),
                    layout,
                )?))
            }
            StateKind::Unitary => Err(QcorrError::Parse(
                "expected a state file, found kind \"unitary\"".into(),
            )),
        }
    }

    pub fn into_unitary(self) -> Result<UnitaryMatrix> {
        if self.kind != StateKind::Unitary {
            return Err(QcorrError::Parse(format!(
                "expected kind \"unitary\", found {:?}",
                self.kind
            )));
        }
        let d = if self.dims.is_empty() {
            let n = self.entries.len();
            let d = (n as f64).sqrt().round() as usize;
            if d * d != n {
                return Err(QcorrError::Parse(format!(
                    "entries: {n} values do not form a square matrix"
                )));
            }
            d
        } else {
            self.dims.iter().product()
        };
        expect_len(&self.entries, d * d)?;
        UnitaryMatrix::new(square(&self.entries, d))
    }
}

fn row_major(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    out
}

fn square(entries: &[[f64; 2]], d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| {
        let [re, im] = entries[i * d + j];
        c(re, im)
    })
}

fn expect_len(entries: &[[f64; 2]], n: usize) -> Result<()> {
    if entries.len() != n {
        return Err(QcorrError::Parse(format!(
            "entries: expected {n} [re, im] pairs, found {}",
            entries.len()
        )));
    }
    if let Some(k) = entries
        .iter()
        .position(|[re, im]| !re.is_finite() || !im.is_finite())
    {
        return Err(QcorrError::Parse(format!("entries[{k}] is not finite")));
    }
    Ok(())
}

pub fn parse_state_file(text: &str) -> Result<StateFile> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| QcorrError::Parse(e.to_string()))?;
    if let Some(entries) = value.get("entries").and_then(|e| e.as_array()) {
        for (k, e) in entries.iter().enumerate() {
            let pair = e
                .as_array()
                .is_some_and(|p| p.len() == 2 && p.iter().all(|x| x.is_number()));
            if !pair {
                return Err(QcorrError::Parse(format!(
                    "entries[{k}] must be a [re, im] pair of numbers, found {e}"
                )));
            }
        }
    }
    serde_json::from_value(value).map_err(|e| QcorrError::Parse(e.to_string()))
}

pub fn parse_state(text: &str) -> Result<QuantumState> {
    parse_state_file(text)?.into_state()
}

pub fn parse_unitary(text: &str) -> Result<UnitaryMatrix> {
    parse_state_file(text)?.into_unitary()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| QcorrError::Parse(format!("{}: {e}", path.display())))
}

pub fn read_state(path: impl AsRef<Path>) -> Result<QuantumState> {
    parse_state(&read(path.as_ref())?)
}

pub fn read_unitary(path: impl AsRef<Path>) -> Result<UnitaryMatrix> {
    parse_unitary(&read(path.as_ref())?)
}

pub fn to_json(file: &StateFile) -> String {
    serde_json::to_string_pretty(file).expect("state file serializes")
}
