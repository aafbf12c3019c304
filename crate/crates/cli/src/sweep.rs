use serde::Serialize;

use qcorr::monogamy::{alpha_grid, family_p, ssa_sweep_with, ArrowConvention, SsaReport};
use qcorr::OptimizerConfig;

use crate::output::{json, num, CliError, Format, Outcome, Table};

pub struct Args {
    pub lambda: f64,
    pub alpha_steps: usize,
    pub arrow: ArrowConvention,
    pub seed: u64,
    pub optimizer: OptimizerConfig,
    pub format: Format,
}

#[derive(Serialize)]
struct Row<'a> {
    alpha: f64,
    p: f64,
    #[serde(flatten)]
    report: &'a SsaReport,
}

#[derive(Serialize)]
struct Report<'a> {
    lambda: f64,
    arrow: ArrowConvention,
    rows: Vec<Row<'a>>,
}

pub const HEADER: [&str; 16] = [
    "alpha",
    "p",
    "s_ab",
    "s_ae",
    "s_b",
    "s_e",
    "e_ab",
    "e_ae",
    "d_ab",
    "d_ae",
    "delta",
    "delta_tilde",
    "i1",
    "i2",
    "spread_ab",
    "spread_ae",
];

pub fn run(args: &Args) -> Result<Outcome, CliError> {
    if !(0.0..=1.0).contains(&args.lambda) {
        return Err(CliError::Input(format!(
            "--lambda {} outside [0, 1]",
            args.lambda
        )));
    }
    if args.alpha_steps < 2 {
        return Err(CliError::Input("--alpha-steps must be at least 2".into()));
    }
    let grid = alpha_grid(args.alpha_steps);
    let reports = ssa_sweep_with(
        args.lambda,
        &grid,
        args.arrow,
        &args.optimizer.with_seed(args.seed),
    )?;
    let failure = grid.iter().zip(&reports).find_map(|(a, r)| {
        if !r.ss_holds {
            Some(format!("alpha = {a}: I1 = {:.3e} is negative", r.i1))
        } else if !r.strengthened_holds {
            Some(format!(
                "alpha = {a}: I1 - max(0, Delta) = {:.3e}",
                r.i1 - r.delta_tilde
            ))
        } else {
            None
        }
    });
    let body = match args.format {
        Format::Json => json(&Report {
            lambda: args.lambda,
            arrow: args.arrow,
            rows: grid
                .iter()
                .zip(&reports)
                .map(|(&alpha, report)| Row {
                    alpha,
                    p: family_p(alpha),
                    report,
                })
                .collect(),
        }),
        Format::Csv => {
            let mut t = Table::new(HEADER.to_vec());
            for (&a, r) in grid.iter().zip(&reports) {
                t.push(
                    [
                        a,
                        family_p(a),
                        r.s_ab,
                        r.s_ae,
                        r.s_b,
                        r.s_e,
                        r.e_ab,
                        r.e_ae,
                        r.d_ab,
                        r.d_ae,
                        r.delta,
                        r.delta_tilde,
                        r.i1,
                        r.i2,
                        r.spread_ab,
                        r.spread_ae,
                    ]
                    .map(num)
                    .to_vec(),
                );
            }
            t.to_csv()
        }
    };
    Ok(Outcome { body, failure })
}
