//! Classical correlation `J(X|Y)` and quantum discord `delta(X|Y)`, with the
//! measurement performed on `Y`.

use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::optimize::{multistart_minimize, NelderMead};
use crate::state::DensityMatrix;

use super::entropy::{mutual_information, von_neumann_entropy};
use super::measurement::{basis_unitary, param_count, post_measurement_entropy, Measurement};

/// Largest measured-subsystem dimension handled by the optimizer.
pub const MAX_MEASURED_DIM: usize = 8;
/// Tiny negative values down to `-CLAMP_FLOOR` are reported as zero.
pub const CLAMP_FLOOR: f64 = 1e-9;

/// Settings for the measurement search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Number of random starts; `None` picks [`default_restarts`] for the
    /// measured dimension.
    pub restarts: Option<usize>,
    /// Stopping tolerance on the objective, in bits.
    pub tol: f64,
    /// Simplex iteration cap per start.
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: None,
            tol: 1e-8,
            max_iters: 2000,
            seed: 42,
        }
    }
}

/// 20 starts for qubits, 50 up to ququarts, 80 beyond.
pub fn default_restarts(measured_dim: usize) -> usize {
    match measured_dim {
        0..=2 => 20,
        3..=4 => 50,
        _ => 80,
    }
}

impl OptimizerConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_restarts(self, restarts: usize) -> Self {
        Self {
            restarts: Some(restarts),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == Some(0) {
            return Err(QcorrError::InvalidParameter(
                "restarts must be at least 1".into(),
            ));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-4) {
            return Err(QcorrError::InvalidParameter(format!(
                "optimizer tol {} outside (0, 1e-4]",
                self.tol
            )));
        }
        if self.max_iters == 0 {
            return Err(QcorrError::InvalidParameter(
                "max_iters must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn restarts_for(&self, measured_dim: usize) -> usize {
        self.restarts
            .unwrap_or_else(|| default_restarts(measured_dim))
    }
}

/// Value of an optimized measure together with optimizer diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    /// Bits.
    pub value: f64,
    pub optimal_measurement: Option<Measurement>,
    /// Whether the best start met the tolerance before the iteration cap.
    pub converged: bool,
    /// Max minus min of the per-start optima, in bits.
    pub spread: f64,
    /// Set when a small negative value was reported as zero or an upper
    /// bound was enforced.
    pub clamped: bool,
}

/// `J(X|Y)` together with the pieces discord needs.
struct Optimized {
    j: MeasureResult,
}

fn check_pair(rho: &DensityMatrix, unmeasured: &str, measured: &str) -> Result<(usize, usize)> {
    if unmeasured == measured {
        return Err(QcorrError::InvalidParameter(format!(
            "measured and unmeasured subsystem are both `{measured}`"
        )));
    }
    let dx = rho.layout().dim_of(unmeasured)?;
    let dy = rho.layout().dim_of(measured)?;
    if dy > MAX_MEASURED_DIM {
        return Err(QcorrError::UnsupportedDimension(format!(
            "measured subsystem `{measured}` has dimension {dy}, maximum is {MAX_MEASURED_DIM}"
        )));
    }
    Ok((dx, dy))
}

fn optimize_measurement(
    rho: &DensityMatrix,
    unmeasured: &str,
    measured: &str,
    cfg: &OptimizerConfig,
) -> Result<Optimized> {
    cfg.validate()?;
    let (dx, dy) = check_pair(rho, unmeasured, measured)?;
    let rho_xy = rho
        .partial_trace(&[unmeasured, measured])?
        .permute(&[unmeasured, measured])?;
    let s_x = von_neumann_entropy(&rho_xy.partial_trace(&[unmeasured])?);
    let entries = rho_xy.entries();

    let objective = |p: &[f64]| post_measurement_entropy(entries, dx, &basis_unitary(dy, p));
    let method = NelderMead {
        max_iters: cfg.max_iters,
        f_tol: cfg.tol,
        initial_step: 0.5,
    };
    let run = multistart_minimize(
        &objective,
        param_count(dy),
        cfg.restarts_for(dy),
        &method,
        cfg.seed,
    );

    let worst = run.optima.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = (worst - run.best.f).max(0.0);
    let upper = s_x.min((dy as f64).log2()) + CLAMP_FLOOR;
    let raw = s_x - run.best.f;
    let (value, clamped) = clamp_measure(raw, "classical correlation")?;
    let (value, clamped) = if value > upper {
        (upper, true)
    } else {
        (value, clamped)
    };
    Ok(Optimized {
        j: MeasureResult {
            value,
            optimal_measurement: Some(Measurement::from_params(measured, dy, run.best.x.clone())?),
            converged: run.best.converged,
            spread,
            clamped,
        },
    })
}

pub(crate) fn clamp_measure(value: f64, what: &str) -> Result<(f64, bool)> {
    if !value.is_finite() {
        return Err(QcorrError::Inconsistency(format!("{what} is not finite")));
    }
    if value < -CLAMP_FLOOR {
        return Err(QcorrError::Inconsistency(format!(
            "{what} = {value:.3e} is below the -{CLAMP_FLOOR:e} floor"
        )));
    }
    if value.abs() < CLAMP_FLOOR {
        return Ok((0.0, value < 0.0));
    }
    Ok((value, false))
}

/// Classical correlation `J(X|Y) = S(rho_X) - min sum_x p_x S(rho_X^x)`,
/// optimized over rank-1 projective measurements on `measured`.
pub fn classical_correlation(
    rho: &DensityMatrix,
    unmeasured: &str,
    measured: &str,
    cfg: &OptimizerConfig,
) -> Result<MeasureResult> {
    Ok(optimize_measurement(rho, unmeasured, measured, cfg)?.j)
}

/// Quantum discord `delta(X|Y) = I(X:Y) - J(X|Y)` with the measurement on
/// `measured`. Because the optimizer can only under-estimate `J`, the result
/// is an upper bound on the projective discord.
pub fn quantum_discord(
    rho: &DensityMatrix,
    unmeasured: &str,
    measured: &str,
    cfg: &OptimizerConfig,
) -> Result<MeasureResult> {
    let opt = optimize_measurement(rho, unmeasured, measured, cfg)?;
    let mi = mutual_information(rho, (unmeasured, measured))?;
    let (value, clamped) = clamp_measure(mi - opt.j.value, "quantum discord")?;
    Ok(MeasureResult {
        value,
        clamped: clamped || opt.j.clamped,
        ..opt.j
    })
}

/// Both `J(X|Y)` and `delta(X|Y)` from a single optimization.
pub fn correlation_split(
    rho: &DensityMatrix,
    unmeasured: &str,
    measured: &str,
    cfg: &OptimizerConfig,
) -> Result<(MeasureResult, MeasureResult)> {
    let opt = optimize_measurement(rho, unmeasured, measured, cfg)?;
    let mi = mutual_information(rho, (unmeasured, measured))?;
    let (value, clamped) = clamp_measure(mi - opt.j.value, "quantum discord")?;
    let discord = MeasureResult {
        value,
        clamped: clamped || opt.j.clamped,
        ..opt.j.clone()
    };
    Ok((opt.j, discord))
}

/// `sum_x p_x S(rho_X^x)` for a fixed measurement on `measurement.sub()`.
pub fn measured_conditional_entropy(
    rho: &DensityMatrix,
    unmeasured: &str,
    measurement: &Measurement,
) -> Result<f64> {
    let measured = measurement.sub();
    let (dx, dy) = check_pair(rho, unmeasured, measured)?;
    if dy != measurement.dim() {
        return Err(QcorrError::UnsupportedDimension(format!(
            "measurement acts on dimension {}, subsystem `{measured}` has {dy}",
            measurement.dim()
        )));
    }
    let rho_xy = rho
        .partial_trace(&[unmeasured, measured])?
        .permute(&[unmeasured, measured])?;
    Ok(post_measurement_entropy(
        rho_xy.entries(),
        dx,
        measurement.basis(),
    ))
}
