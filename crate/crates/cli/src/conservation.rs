use rayon::prelude::*;
use serde::Serialize;

use qcorr::monogamy::{CorrelationLedger, TripartiteCorrelations};
use qcorr::random::random_pure_state;
use qcorr::{OptimizerConfig, SubsystemLayout};

use crate::output::{json, num, CliError, Format, Outcome, Table};

pub struct Args {
    pub samples: u64,
    pub tol: f64,
    pub seed: u64,
    pub optimizer: OptimizerConfig,
    pub format: Format,
}

#[derive(Serialize)]
struct Row {
    seed: u64,
    focus: String,
    ledger: CorrelationLedger,
}

#[derive(Serialize)]
struct Summary {
    samples: u64,
    tol: f64,
    max_abs_residuals: [f64; 5],
    worst_seed: u64,
    worst_focus: String,
    passed: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    rows: &'a [Row],
    summary: &'a Summary,
}

pub const HEADER: [&str; 13] = [
    "seed",
    "focus",
    "e_ab",
    "e_ae",
    "d_ab",
    "d_ae",
    "r1",
    "r2",
    "r3",
    "r4",
    "r5",
    "spread_ab",
    "spread_ae",
];

pub fn run(args: &Args) -> Result<Outcome, CliError> {
    let layout = SubsystemLayout::qubits(&["A", "B", "E"])?;
    let per_sample: Vec<Vec<Row>> = (0..args.samples)
        .into_par_iter()
        .map(|i| {
            let seed = args.seed.wrapping_add(i);
            let psi = random_pure_state(&layout, seed);
            let t = TripartiteCorrelations::compute(
                &psi.to_density(),
                &args.optimizer.with_seed(seed),
            )?;
            Ok(t.focus_ledgers()?
                .into_iter()
                .map(|ledger| Row {
                    seed,
                    focus: ledger.labels[0].clone(),
                    ledger,
                })
                .collect())
        })
        .collect::<qcorr::Result<_>>()?;
    let rows: Vec<Row> = per_sample.into_iter().flatten().collect();

    let mut max_abs = [0.0f64; 5];
    let mut worst = (0.0f64, args.seed, String::from("A"));
    for row in &rows {
        for (m, r) in max_abs.iter_mut().zip(row.ledger.residuals()) {
            *m = m.max(r.abs());
        }
        let r = row.ledger.max_abs_residual();
        if r > worst.0 {
            worst = (r, row.seed, row.focus.clone());
        }
    }
    let passed = worst.0 <= args.tol;
    let summary = Summary {
        samples: args.samples,
        tol: args.tol,
        max_abs_residuals: max_abs,
        worst_seed: worst.1,
        worst_focus: worst.2.clone(),
        passed,
    };

    let body = match args.format {
        Format::Json => json(&Report {
            rows: &rows,
            summary: &summary,
        }),
        Format::Csv => {
            let mut t = Table::new(HEADER.to_vec());
            for row in &rows {
                let l = &row.ledger;
                let mut cells = vec![row.seed.to_string(), row.focus.clone()];
                cells.extend(
                    [
                        l.e_ab,
                        l.e_ae,
                        l.d_ab,
                        l.d_ae,
                        l.r1,
                        l.r2,
                        l.r3,
                        l.r4,
                        l.r5,
                        l.spread_ab,
                        l.spread_ae,
                    ]
                    .map(num),
                );
                t.push(cells);
            }
            let spread_ab = rows.iter().map(|r| r.ledger.spread_ab).fold(0.0, f64::max);
            let spread_ae = rows.iter().map(|r| r.ledger.spread_ae).fold(0.0, f64::max);
            let mut cells = vec![
                "max".to_string(),
                "all".to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ];
            cells.extend(max_abs.map(num));
            cells.extend([num(spread_ab), num(spread_ae)]);
            t.push(cells);
            t.to_csv()
        }
    };
    let failure = (!passed).then(|| {
        format!(
            "max |residual| = {:.3e} exceeds tol {:e} (worst sample: seed {}, focus {})",
            worst.0, args.tol, worst.1, worst.2
        )
    });
    Ok(Outcome { body, failure })
}
