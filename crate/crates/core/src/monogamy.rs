//! Monogamy relations between EOF and discord on tripartite states.
//!
//! For a pure state on `A, B, E`:
//!
//! * `E_AB + J(A|E) = S_A`
//! * `E_AB = delta(A|E) + S(A|E)` and `delta(A|B) = E_AE - S(A|B)`
//! * `delta(A|B) = E_AE - E_E(AB) + E_B(AE)`
//! * `E_AB + E_AE = delta(A|B) + delta(A|E)` (conservation)
//!
//! For mixed states the balance `Delta = E_AB + E_AE - delta(A|B) - delta(A|E)`
//! tightens strong subadditivity to `S_B + S_E + max(0, Delta) <= S_AB + S_AE`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::linalg::{c, CMatrix, CVector};
use crate::measures::discord::correlation_split;
use crate::measures::entropy::{marginal_entropy, von_neumann_entropy};
use crate::measures::eof::eof_two_qubit;
use crate::measures::{classical_correlation, MeasureResult, OptimizerConfig};
use crate::state::{DensityMatrix, PureState, SubsystemLayout};

/// Slack for inequalities made of entropies only.
pub const ENTROPY_SLACK: f64 = 1e-9;
/// Slack for inequalities involving optimized discord.
pub const DISCORD_SLACK: f64 = 1e-3;
/// Grid size of the default `alpha` sweep.
pub const DEFAULT_ALPHA_STEPS: usize = 201;

/// Which subsystem of an ordered pair is measured when forming `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArrowConvention {
    /// `delta_XY` measures `Y`.
    #[default]
    MeasureSecond,
    /// `delta_XY` measures `X`.
    MeasureFirst,
}

/// Every quantity entering the pure-state monogamy relations, for roles
/// `(A, B, E)`. `d_xy` is the discord with the measurement on `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationLedger {
    pub labels: [String; 3],
    pub s_a: f64,
    pub s_b: f64,
    pub s_e: f64,
    pub s_ab: f64,
    pub s_ae: f64,
    pub s_be: f64,
    pub e_ab: f64,
    pub e_ae: f64,
    pub e_be: f64,
    pub j_ae: f64,
    pub d_ab: f64,
    pub d_ae: f64,
    pub d_ba: f64,
    pub d_be: f64,
    /// Bipartition EOFs, equal to the reduced entropies for pure states.
    pub e_a_be: f64,
    pub e_b_ae: f64,
    pub e_e_ab: f64,
    /// `E_AB + J(A|E) - S_A`
    pub r1: f64,
    /// `E_AB - delta(A|E) - S(A|E)`
    pub r2: f64,
    /// `delta(A|B) - E_AE + S(A|B)`
    pub r3: f64,
    /// `delta(A|B) - (E_AE - E_E(AB) + E_B(AE))`
    pub r4: f64,
    /// `(E_AB + E_AE) - (delta(A|B) + delta(A|E))`
    pub r5: f64,
    pub spread_ab: f64,
    pub spread_ae: f64,
    pub spread_ba: f64,
    pub spread_be: f64,
}

impl CorrelationLedger {
    pub fn residuals(&self) -> [f64; 5] {
        [self.r1, self.r2, self.r3, self.r4, self.r5]
    }

    pub fn max_abs_residual(&self) -> f64 {
        self.residuals().iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Strong-subadditivity balance for roles `(A, B, E)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SsaReport {
    pub arrow: ArrowConvention,
    pub s_ab: f64,
    pub s_ae: f64,
    pub s_b: f64,
    pub s_e: f64,
    pub e_ab: f64,
    pub e_ae: f64,
    pub d_ab: f64,
    pub d_ae: f64,
    /// `E_AB + E_AE - delta_AB - delta_AE`
    pub delta: f64,
    /// `max(0, delta)`
    pub delta_tilde: f64,
    /// `S_AB + S_AE - S_B - S_E`
    pub i1: f64,
    /// `i1 - delta`
    pub i2: f64,
    /// `i1 >= -ENTROPY_SLACK`
    pub ss_holds: bool,
    /// `i1 - delta_tilde >= -DISCORD_SLACK`
    pub strengthened_holds: bool,
    pub spread_ab: f64,
    pub spread_ae: f64,
}

/// Pair-wise entropies, EOFs and discords of a three-party state, indexed by
/// layout position.
#[derive(Debug, Clone)]
pub struct TripartiteCorrelations {
    labels: [String; 3],
    pure: bool,
    single: [f64; 3],
    pair: [[f64; 3]; 3],
    eof: [[f64; 3]; 3],
    /// `(J, delta)` with the unmeasured side first.
    split: [[Option<(MeasureResult, MeasureResult)>; 3]; 3],
}

fn require_three_qubits(layout: &SubsystemLayout) -> Result<()> {
    if layout.dims() != [2, 2, 2] {
        return Err(QcorrError::UnsupportedDimension(format!(
            "expected three qubits, got dims {:?}",
            layout.dims()
        )));
    }
    Ok(())
}

fn labels3(layout: &SubsystemLayout) -> [String; 3] {
    let l = layout.labels();
    [l[0].clone(), l[1].clone(), l[2].clone()]
}

impl TripartiteCorrelations {
    /// Computes all three pair EOFs and all six ordered discords of a
    /// three-qubit state.
    pub fn compute(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<Self> {
        require_three_qubits(rho.layout())?;
        let labels = labels3(rho.layout());
        let name = |i: usize| labels[i].as_str();
        let mut single = [0.0; 3];
        let mut pair = [[0.0; 3]; 3];
        let mut eof = [[0.0; 3]; 3];
        for i in 0..3 {
            single[i] = marginal_entropy(rho, &[name(i)])?;
            for j in i + 1..3 {
                let m = rho.partial_trace(&[name(i), name(j)])?;
                pair[i][j] = von_neumann_entropy(&m);
                pair[j][i] = pair[i][j];
                eof[i][j] = eof_two_qubit(&m)?;
                eof[j][i] = eof[i][j];
            }
        }
        let ordered: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let splits = ordered
            .iter()
            .map(|&(i, j)| correlation_split(rho, name(i), name(j), cfg))
            .collect::<Result<Vec<_>>>()?;
        let mut split: [[Option<(MeasureResult, MeasureResult)>; 3]; 3] = Default::default();
        for (&(i, j), s) in ordered.iter().zip(splits) {
            split[i][j] = Some(s);
        }
        Ok(Self {
            labels,
            pure: (rho.purity() - 1.0).abs() < 1e-9,
            single,
            pair,
            eof,
            split,
        })
    }

    pub fn labels(&self) -> &[String; 3] {
        &self.labels
    }

    fn pos(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| QcorrError::UnknownLabel(label.to_string()))
    }

    fn roles(&self, a: &str, b: &str, e: &str) -> Result<(usize, usize, usize)> {
        let (ia, ib, ie) = (self.pos(a)?, self.pos(b)?, self.pos(e)?);
        if ia == ib || ia == ie || ib == ie {
            return Err(QcorrError::InvalidParameter(format!(
                "roles ({a}, {b}, {e}) must be three distinct subsystems"
            )));
        }
        Ok((ia, ib, ie))
    }

    fn split_of(&self, unmeasured: usize, measured: usize) -> &(MeasureResult, MeasureResult) {
        self.split[unmeasured][measured]
            .as_ref()
            .expect("all ordered pairs are computed")
    }

    /// `J(x|y)` with the measurement on `y`.
    pub fn classical_correlation(&self, x: &str, y: &str) -> Result<&MeasureResult> {
        let (i, j) = (self.pos(x)?, self.pos(y)?);
        if i == j {
            return Err(QcorrError::InvalidParameter(format!("pair repeats `{x}`")));
        }
        Ok(&self.split_of(i, j).0)
    }

    /// `delta(x|y)` with the measurement on `y`.
    pub fn discord(&self, x: &str, y: &str) -> Result<&MeasureResult> {
        let (i, j) = (self.pos(x)?, self.pos(y)?);
        if i == j {
            return Err(QcorrError::InvalidParameter(format!("pair repeats `{x}`")));
        }
        Ok(&self.split_of(i, j).1)
    }

    pub fn eof(&self, x: &str, y: &str) -> Result<f64> {
        Ok(self.eof[self.pos(x)?][self.pos(y)?])
    }

    /// Ledger for roles `(a, b, e)`. Only defined for pure global states.
    pub fn ledger(&self, a: &str, b: &str, e: &str) -> Result<CorrelationLedger> {
        if !self.pure {
            return Err(QcorrError::InvalidParameter(
                "the correlation ledger needs a pure global state".into(),
            ));
        }
        let (ia, ib, ie) = self.roles(a, b, e)?;
        let (s_a, s_b, s_e) = (self.single[ia], self.single[ib], self.single[ie]);
        let (s_ab, s_ae, s_be) = (self.pair[ia][ib], self.pair[ia][ie], self.pair[ib][ie]);
        let (e_ab, e_ae, e_be) = (self.eof[ia][ib], self.eof[ia][ie], self.eof[ib][ie]);
        let (j_ae, d_ae) = self.split_of(ia, ie);
        let d_ab = &self.split_of(ia, ib).1;
        let d_ba = &self.split_of(ib, ia).1;
        let d_be = &self.split_of(ib, ie).1;
        let (e_a_be, e_b_ae, e_e_ab) = (s_a, s_b, s_e);
        let s_a_given_e = s_ae - s_e;
        let s_a_given_b = s_ab - s_b;
        Ok(CorrelationLedger {
            labels: [a.to_string(), b.to_string(), e.to_string()],
            s_a,
            s_b,
            s_e,
            s_ab,
            s_ae,
            s_be,
            e_ab,
            e_ae,
            e_be,
            j_ae: j_ae.value,
            d_ab: d_ab.value,
            d_ae: d_ae.value,
            d_ba: d_ba.value,
            d_be: d_be.value,
            e_a_be,
            e_b_ae,
            e_e_ab,
            r1: e_ab + j_ae.value - s_a,
            r2: e_ab - d_ae.value - s_a_given_e,
            r3: d_ab.value - e_ae + s_a_given_b,
            r4: d_ab.value - (e_ae - e_e_ab + e_b_ae),
            r5: (e_ab + e_ae) - (d_ab.value + d_ae.value),
            spread_ab: d_ab.spread,
            spread_ae: d_ae.spread,
            spread_ba: d_ba.spread,
            spread_be: d_be.spread,
        })
    }

    /// Ledgers with each subsystem in turn as the focus `A`; the other two
    /// keep their layout order.
    pub fn focus_ledgers(&self) -> Result<Vec<CorrelationLedger>> {
        (0..3)
            .map(|f| {
                let others: Vec<&str> = (0..3)
                    .filter(|&i| i != f)
                    .map(|i| self.labels[i].as_str())
                    .collect();
                self.ledger(&self.labels[f], others[0], others[1])
            })
            .collect()
    }
}

fn require_pure_tripartite(psi: &PureState) -> Result<()> {
    if psi.layout().len() != 3 {
        return Err(QcorrError::Layout(format!(
            "expected a tripartite state, found {} subsystems",
            psi.layout().len()
        )));
    }
    Ok(())
}

/// `E_AB + J(A|E) - S_A` on a pure tripartite state with qubits `a`, `b`.
pub fn koashi_winter_residual(
    psi: &PureState,
    a: &str,
    b: &str,
    e: &str,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    require_pure_tripartite(psi)?;
    let positions = psi.layout().positions(&[a, b, e])?;
    if positions.len() != 3 {
        return Err(QcorrError::InvalidParameter(
            "roles must be three distinct subsystems".into(),
        ));
    }
    let e_ab = eof_two_qubit(&psi.reduced(&[a, b])?)?;
    let rho_ae = psi.reduced(&[a, e])?;
    let j_ae = classical_correlation(&rho_ae, a, e, cfg)?;
    let s_a = von_neumann_entropy(&psi.reduced(&[a])?);
    Ok(e_ab + j_ae.value - s_a)
}

/// Ledger of a pure three-qubit state with roles in layout order.
pub fn discord_ledger(psi: &PureState, cfg: &OptimizerConfig) -> Result<CorrelationLedger> {
    require_pure_tripartite(psi)?;
    let t = TripartiteCorrelations::compute(&psi.to_density(), cfg)?;
    let [a, b, e] = t.labels().clone();
    t.ledger(&a, &b, &e)
}

/// `(E_fx + E_fy) - (delta(f|x) + delta(f|y))` for focus `f` and the two other
/// subsystems `x`, `y`.
pub fn conservation_residual(psi: &PureState, focus: &str, cfg: &OptimizerConfig) -> Result<f64> {
    require_pure_tripartite(psi)?;
    require_three_qubits(psi.layout())?;
    let others: Vec<&str> = psi
        .layout()
        .labels()
        .iter()
        .map(String::as_str)
        .filter(|l| *l != focus)
        .collect();
    if others.len() != 2 {
        return Err(QcorrError::UnknownLabel(focus.to_string()));
    }
    let mut total = 0.0;
    for other in others {
        let pair = psi.reduced(&[focus, other])?;
        let d = correlation_split(&pair, focus, other, cfg)?.1;
        total += eof_two_qubit(&pair)? - d.value;
    }
    Ok(total)
}

/// Balance `Delta` and the two strong-subadditivity gaps for roles `(a, b, e)`
/// with discord measured on `b` and `e`.
pub fn delta_balance(
    rho: &DensityMatrix,
    a: &str,
    b: &str,
    e: &str,
    cfg: &OptimizerConfig,
) -> Result<SsaReport> {
    delta_balance_with(rho, [a, b, e], ArrowConvention::MeasureSecond, cfg)
}

pub fn delta_balance_with(
    rho: &DensityMatrix,
    roles: [&str; 3],
    arrow: ArrowConvention,
    cfg: &OptimizerConfig,
) -> Result<SsaReport> {
    require_three_qubits(rho.layout())?;
    let [a, b, e] = roles;
    let positions = rho.layout().positions(&roles)?;
    if positions.len() != 3 {
        return Err(QcorrError::InvalidParameter(
            "roles must be three distinct subsystems".into(),
        ));
    }
    let rho_ab = rho.partial_trace(&[a, b])?;
    let rho_ae = rho.partial_trace(&[a, e])?;
    let s_ab = von_neumann_entropy(&rho_ab);
    let s_ae = von_neumann_entropy(&rho_ae);
    let s_b = marginal_entropy(rho, &[b])?;
    let s_e = marginal_entropy(rho, &[e])?;
    let e_ab = eof_two_qubit(&rho_ab)?;
    let e_ae = eof_two_qubit(&rho_ae)?;
    let discord = |pair: &DensityMatrix, other: &str| -> Result<MeasureResult> {
        let r = match arrow {
            ArrowConvention::MeasureSecond => correlation_split(pair, a, other, cfg)?,
            ArrowConvention::MeasureFirst => correlation_split(pair, other, a, cfg)?,
        };
        Ok(r.1)
    };
    let d_ab = discord(&rho_ab, b)?;
    let d_ae = discord(&rho_ae, e)?;
    let delta = e_ab + e_ae - d_ab.value - d_ae.value;
    let i1 = s_ab + s_ae - s_b - s_e;
    let delta_tilde = delta.max(0.0);
    Ok(SsaReport {
        arrow,
        s_ab,
        s_ae,
        s_b,
        s_e,
        e_ab,
        e_ae,
        d_ab: d_ab.value,
        d_ae: d_ae.value,
        delta,
        delta_tilde,
        i1,
        i2: i1 - delta,
        ss_holds: i1 >= -ENTROPY_SLACK,
        strengthened_holds: i1 - delta_tilde >= -DISCORD_SLACK,
        spread_ab: d_ab.spread,
        spread_ae: d_ae.spread,
    })
}

/// Amplitude `p = sqrt((1 - alpha^2) / 2)` of the example family.
pub fn family_p(alpha: f64) -> f64 {
    ((1.0 - alpha * alpha) / 2.0).max(0.0).sqrt()
}

/// `(1 - lambda) I/8 + lambda |Psi><Psi|` with
/// `|Psi> = p (|101> + |011>) + alpha |000>` on qubits `A, B, E`.
pub fn example_family_state(alpha: f64, lambda: f64) -> Result<DensityMatrix> {
    for (name, v) in [("alpha", alpha), ("lambda", lambda)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(QcorrError::InvalidParameter(format!(
                "{name} = {v} outside [0, 1]"
            )));
        }
    }
    let p = family_p(alpha);
    let mut psi = CVector::zeros(8);
    psi[0] = c(alpha, 0.0);
    psi[0b011] = c(p, 0.0);
    psi[0b101] = c(p, 0.0);
    let rho = CMatrix::identity(8, 8) * c((1.0 - lambda) / 8.0, 0.0)
        + &psi * psi.adjoint() * c(lambda, 0.0);
    DensityMatrix::new(rho, SubsystemLayout::qubits(&["A", "B", "E"])?)
}

/// `steps` uniform points covering `[0, 1]`.
pub fn alpha_grid(steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect(),
    }
}

/// One report per grid point, in grid order. Point `i` optimizes with seed
/// `cfg.seed + i`.
pub fn ssa_sweep(lambda: f64, alpha_grid: &[f64], cfg: &OptimizerConfig) -> Result<Vec<SsaReport>> {
    ssa_sweep_with(lambda, alpha_grid, ArrowConvention::MeasureSecond, cfg)
}

pub fn ssa_sweep_with(
    lambda: f64,
    alpha_grid: &[f64],
    arrow: ArrowConvention,
    cfg: &OptimizerConfig,
) -> Result<Vec<SsaReport>> {
    cfg.validate()?;
    alpha_grid
        .par_iter()
        .enumerate()
        .map(|(i, &alpha)| {
            let rho = example_family_state(alpha, lambda)?;
            let point_cfg = cfg.with_seed(cfg.seed.wrapping_add(i as u64));
            delta_balance_with(&rho, ["A", "B", "E"], arrow, &point_cfg)
        })
        .collect()
}
