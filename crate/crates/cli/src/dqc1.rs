use std::path::PathBuf;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use qcorr::dqc1::{
    bipartition_entropies, build_dqc1_state, dqc1_ledger, trace_readout, Dqc1Instance, Dqc1Ledger,
    EofMethod, TraceReadout, MAX_LEDGER_QUBITS,
};
use qcorr::io::read_unitary;
use qcorr::measures::negativity;
use qcorr::OptimizerConfig;

use crate::output::{json, num, opt_num, CliError, Format, Outcome, Table};

pub const TRACE_TOL: f64 = 1e-9;
pub const NEGATIVITY_TOL: f64 = 1e-9;
pub const RESIDUAL_TOL: f64 = 1e-3;

pub struct Args {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub unitary: Option<PathBuf>,
    pub optimizer: OptimizerConfig,
    pub format: Format,
}

#[derive(Serialize)]
struct Row {
    seed: u64,
    n: usize,
    exact_trace: Complex64,
    readout: TraceReadout,
    negativity_ab: f64,
    /// `(E_A(BE), E_B(AE), E_E(AB))`
    bipartition_entropies: [f64; 3],
    /// Absent for `n = 3`.
    ledger: Option<Dqc1Ledger>,
}

impl Row {
    fn check(&self) -> Option<String> {
        let err = (self.readout.estimate - self.exact_trace).norm();
        if err > TRACE_TOL {
            return Some(format!("seed {}: |estimate - Tr U| = {err:.3e}", self.seed));
        }
        if self.negativity_ab > NEGATIVITY_TOL {
            return Some(format!(
                "seed {}: negativity(A:B) = {:.3e}",
                self.seed, self.negativity_ab
            ));
        }
        if let Some(l) = &self.ledger {
            if l.max_abs_residual() > RESIDUAL_TOL {
                return Some(format!(
                    "seed {}: ledger residual {:.3e}",
                    self.seed,
                    l.max_abs_residual()
                ));
            }
        }
        None
    }
}

pub const HEADER: [&str; 26] = [
    "seed",
    "n",
    "exact_re",
    "exact_im",
    "estimate_re",
    "estimate_im",
    "alternative_re",
    "alternative_im",
    "sigma_x",
    "sigma_y",
    "negativity_ab",
    "concurrence_ab",
    "e_ab",
    "e_ae",
    "e_be",
    "d_ab",
    "d_ba",
    "d_ae",
    "d_be",
    "e_a_be",
    "e_b_ae",
    "e_e_ab",
    "r8",
    "r9",
    "r10",
    "eof_method",
];

fn analyze(inst: &Dqc1Instance, seed: u64, optimizer: &OptimizerConfig) -> qcorr::Result<Row> {
    let rho_ab = build_dqc1_state(inst)?;
    let ledger = if inst.n() <= MAX_LEDGER_QUBITS {
        Some(dqc1_ledger(inst, &optimizer.with_seed(seed))?)
    } else {
        None
    };
    Ok(Row {
        seed,
        n: inst.n(),
        exact_trace: inst.unitary().trace(),
        readout: trace_readout(&rho_ab)?,
        negativity_ab: negativity(&rho_ab, "A")?,
        bipartition_entropies: bipartition_entropies(inst)?,
        ledger,
    })
}

fn blank<const N: usize>() -> [String; N] {
    std::array::from_fn(|_| String::new())
}

fn csv_row(r: &Row) -> Vec<String> {
    let mut cells = vec![r.seed.to_string(), r.n.to_string()];
    cells.extend(
        [
            r.exact_trace.re,
            r.exact_trace.im,
            r.readout.estimate.re,
            r.readout.estimate.im,
            r.readout.alternative.re,
            r.readout.alternative.im,
            r.readout.sigma_x,
            r.readout.sigma_y,
            r.negativity_ab,
        ]
        .map(num),
    );
    let l = r.ledger.as_ref();
    cells.push(opt_num(l.and_then(|l| l.concurrence_ab)));
    let pairs: [String; 7] = l.map_or_else(blank, |l| {
        [l.e_ab, l.e_ae, l.e_be, l.d_ab, l.d_ba, l.d_ae, l.d_be].map(num)
    });
    cells.extend(pairs);
    cells.extend(r.bipartition_entropies.map(num));
    let residuals: [String; 3] = l.map_or_else(blank, |l| [l.r8, l.r9, l.r10].map(num));
    cells.extend(residuals);
    cells.push(match l.map(|l| l.eof_method) {
        Some(EofMethod::Concurrence) => "concurrence".into(),
        Some(EofMethod::KoashiWinter) => "koashi-winter".into(),
        None => String::new(),
    });
    cells
}

pub fn run(args: &Args) -> Result<Outcome, CliError> {
    let rows: Vec<Row> = match &args.unitary {
        Some(path) => {
            let inst = Dqc1Instance::new(read_unitary(path)?)?;
            vec![analyze(&inst, args.seed, &args.optimizer)?]
        }
        None => (0..args.samples)
            .into_par_iter()
            .map(|i| {
                let seed = args.seed.wrapping_add(i);
                analyze(
                    &Dqc1Instance::from_seed(args.n, seed)?,
                    seed,
                    &args.optimizer,
                )
            })
            .collect::<qcorr::Result<_>>()?,
    };
    let failure = rows.iter().find_map(Row::check);
    let body = match args.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut t = Table::new(HEADER.to_vec());
            for r in &rows {
                t.push(csv_row(r));
            }
            t.to_csv()
        }
    };
    Ok(Outcome { body, failure })
}
