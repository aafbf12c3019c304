use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use qcorr::io::{parse_state_file, StateKind};
use qcorr::measures::{
    concurrence, correlation_split, eof_two_qubit, mutual_information, negativity,
    von_neumann_entropy,
};
use qcorr::monogamy::{delta_balance, CorrelationLedger, SsaReport, TripartiteCorrelations};
use qcorr::{DensityMatrix, OptimizerConfig, QuantumState};

use crate::output::{json, CliError, Outcome};

/// Largest measured dimension the report optimizes over.
const MAX_MEASURED: usize = 8;

#[derive(Serialize)]
struct Subsystem {
    label: String,
    dim: usize,
    entropy: f64,
}

#[derive(Serialize)]
struct Directed {
    /// Measured subsystem.
    measured: String,
    classical_correlation: f64,
    discord: f64,
    spread: f64,
}

#[derive(Serialize)]
struct Pair {
    labels: [String; 2],
    mutual_information: f64,
    negativity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    concurrence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eof: Option<f64>,
    discord: Vec<Directed>,
}

#[derive(Serialize)]
struct StateReport {
    kind: StateKind,
    valid: bool,
    dims: Vec<usize>,
    labels: Vec<String>,
    purity: f64,
    entropy: f64,
    subsystems: Vec<Subsystem>,
    pairs: Vec<Pair>,
    /// Three-qubit states, roles in layout order.
    #[serde(skip_serializing_if = "Option::is_none")]
    balance: Option<SsaReport>,
    /// Pure three-qubit states, roles in layout order.
    #[serde(skip_serializing_if = "Option::is_none")]
    ledger: Option<CorrelationLedger>,
}

#[derive(Serialize)]
struct UnitaryReport {
    kind: StateKind,
    valid: bool,
    dim: usize,
    trace: Complex64,
}

fn pair_report(
    rho: &DensityMatrix,
    x: &str,
    y: &str,
    cfg: &OptimizerConfig,
) -> qcorr::Result<Pair> {
    let marginal = rho.partial_trace(&[x, y])?.permute(&[x, y])?;
    let layout = marginal.layout();
    let qubits = layout.dims() == [2, 2];
    let mut discord = Vec::new();
    for (u, m) in [(x, y), (y, x)] {
        if layout.dim_of(m)? <= MAX_MEASURED {
            let (j, d) = correlation_split(&marginal, u, m, cfg)?;
            discord.push(Directed {
                measured: m.to_string(),
                classical_correlation: j.value,
                discord: d.value,
                spread: d.spread,
            });
        }
    }
    Ok(Pair {
        labels: [x.to_string(), y.to_string()],
        mutual_information: mutual_information(&marginal, (x, y))?,
        negativity: negativity(&marginal, x)?,
        concurrence: if qubits {
            Some(concurrence(&marginal)?)
        } else {
            None
        },
        eof: if qubits {
            Some(eof_two_qubit(&marginal)?)
        } else {
            None
        },
        discord,
    })
}

fn state_report(
    state: QuantumState,
    kind: StateKind,
    cfg: &OptimizerConfig,
) -> qcorr::Result<StateReport> {
    let rho = match state {
        QuantumState::Pure(psi) => psi.to_density(),
        QuantumState::Mixed(rho) => rho,
    };
    let layout = rho.layout().clone();
    let labels: Vec<&str> = layout.labels().iter().map(String::as_str).collect();
    let subsystems = labels
        .iter()
        .zip(layout.dims())
        .map(|(l, &dim)| {
            Ok(Subsystem {
                label: l.to_string(),
                dim,
                entropy: von_neumann_entropy(&rho.partial_trace(&[l])?),
            })
        })
        .collect::<qcorr::Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            pairs.push(pair_report(&rho, labels[i], labels[j], cfg)?);
        }
    }
    let three_qubits = layout.dims() == [2, 2, 2];
    let pure = (rho.purity() - 1.0).abs() < 1e-9;
    let balance = if three_qubits {
        Some(delta_balance(&rho, labels[0], labels[1], labels[2], cfg)?)
    } else {
        None
    };
    let ledger = if three_qubits && pure {
        Some(TripartiteCorrelations::compute(&rho, cfg)?.ledger(labels[0], labels[1], labels[2])?)
    } else {
        None
    };
    Ok(StateReport {
        kind,
        valid: true,
        dims: layout.dims().to_vec(),
        labels: layout.labels().to_vec(),
        purity: rho.purity(),
        entropy: von_neumann_entropy(&rho),
        subsystems,
        pairs,
        balance,
        ledger,
    })
}

pub fn run(path: &Path, cfg: &OptimizerConfig) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file = parse_state_file(&text)?;
    let body = match file.kind {
        StateKind::Unitary => {
            let u = file.into_unitary()?;
            json(&UnitaryReport {
                kind: StateKind::Unitary,
                valid: true,
                dim: u.dim(),
                trace: u.trace(),
            })
        }
        kind => json(&state_report(file.into_state()?, kind, cfg)?),
    };
    Ok(Outcome {
        body,
        failure: None,
    })
}
