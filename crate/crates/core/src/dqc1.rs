//! One clean qubit (`A`) plus `n` maximally mixed qubits (`B`) purified by an
//! environment `E`.
//!
//! After the Hadamard and controlled-`U` the `AB` state is
//!
//! ```text
//! rho_AB = 1/2^(n+1) [[I, U^dag], [U, I]]
//! ```
//!
//! and the purification is `sum_i c_i (|0> + e^(i theta_i)|1>)/sqrt 2 |u_i>|e_i>`
//! over the eigenpairs `U |u_i> = e^(i theta_i) |u_i>`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::linalg::{self, c, CMatrix, CVector};
use crate::measures::discord::{clamp_measure, correlation_split};
use crate::measures::entropy::von_neumann_entropy;
use crate::measures::eof::{concurrence, eof_two_qubit};
use crate::measures::{negativity, OptimizerConfig};
use crate::random::random_unitary;
use crate::state::{DensityMatrix, PureState, SubsystemLayout, UnitaryMatrix};

/// Largest number of mixed qubits.
pub const MAX_QUBITS: usize = 3;
/// Largest number of mixed qubits for which discords are computed.
pub const MAX_LEDGER_QUBITS: usize = 2;
pub const EIGEN_TOL: f64 = 1e-9;
pub const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct Dqc1Instance {
    n: usize,
    unitary: UnitaryMatrix,
    eigenphases: Vec<f64>,
    eigenvectors: CMatrix,
    weights: Vec<f64>,
}

fn wrap_phase(theta: f64) -> f64 {
    if theta <= -std::f64::consts::PI {
        theta + 2.0 * std::f64::consts::PI
    } else {
        theta
    }
}

fn is_diagonal(m: &CMatrix) -> bool {
    let d = m.nrows();
    (0..d).all(|i| (0..d).all(|j| i == j || m[(i, j)].norm() < 1e-14))
}

/// Eigenpairs of a unitary. Diagonal inputs keep their diagonal order.
fn eigen_unitary(u: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let d = u.nrows();
    let (q, t) = if is_diagonal(u) {
        (CMatrix::identity(d, d), u.clone())
    } else {
        nalgebra::linalg::Schur::try_new(u.clone(), 1e-15, 10_000)
            .ok_or_else(|| {
                QcorrError::Inconsistency("Schur decomposition did not converge".into())
            })?
            .unpack()
    };
    let phases: Vec<f64> = (0..d).map(|i| wrap_phase(t[(i, i)].arg())).collect();
    let diag = CVector::from_iterator(d, phases.iter().map(|&p| Complex64::from_polar(1.0, p)));
    let rebuilt = &q * CMatrix::from_diagonal(&diag) * q.adjoint();
    let err = linalg::max_abs_diff(&rebuilt, u);
    if err > EIGEN_TOL {
        return Err(QcorrError::Invariant {
            invariant: "eigendecomposition",
            detail: format!("reconstruction error {err:.3e} exceeds {EIGEN_TOL:e}"),
        });
    }
    Ok((phases, q))
}

impl Dqc1Instance {
    /// Standard protocol with uniform weights `1/2^n`.
    pub fn new(unitary: UnitaryMatrix) -> Result<Self> {
        let d = unitary.dim();
        let n = d.trailing_zeros() as usize;
        if !d.is_power_of_two() || n == 0 || n > MAX_QUBITS {
            return Err(QcorrError::UnsupportedDimension(format!(
                "unitary dimension {d} is not 2^n with 1 <= n <= {MAX_QUBITS}"
            )));
        }
        let (eigenphases, eigenvectors) = eigen_unitary(unitary.entries())?;
        Ok(Self {
            n,
            unitary,
            eigenphases,
            eigenvectors,
            weights: vec![1.0 / d as f64; d],
        })
    }

    /// Haar-random `U` on `n` qubits.
    pub fn from_seed(n: usize, seed: u64) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(QcorrError::UnsupportedDimension(format!(
                "n = {n} outside 1..={MAX_QUBITS}"
            )));
        }
        Self::new(random_unitary(1 << n, seed)?)
    }

    /// Replaces the weights `c_i^2`, listed in eigenvalue order.
    pub fn with_weights(mut self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.weights.len() {
            return Err(QcorrError::InvalidParameter(format!(
                "expected {} weights, got {}",
                self.weights.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(QcorrError::InvalidParameter(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_TOL {
            return Err(QcorrError::InvalidParameter(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        self.weights = weights.to_vec();
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unitary(&self) -> &UnitaryMatrix {
        &self.unitary
    }

    /// `theta_i` in `(-pi, pi]`.
    pub fn eigenphases(&self) -> &[f64] {
        &self.eigenphases
    }

    /// Columns are the `|u_i>`.
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_uniform(&self) -> bool {
        let u = 1.0 / self.weights.len() as f64;
        self.weights.iter().all(|w| (w - u).abs() <= WEIGHT_TOL)
    }

    /// `Tr(rho_B U) = sum_i c_i^2 e^(i theta_i)`.
    pub fn weighted_trace(&self) -> Complex64 {
        self.weights
            .iter()
            .zip(&self.eigenphases)
            .map(|(w, &t)| Complex64::from_polar(*w, t))
            .sum()
    }
}

fn dqc1_layout(n: usize, with_env: bool) -> Result<SubsystemLayout> {
    let d = 1 << n;
    if with_env {
        SubsystemLayout::new(vec![2, d, d], vec!["A", "B", "E"])
    } else {
        SubsystemLayout::new(vec![2, d], vec!["A", "B"])
    }
}

/// Post-circuit `rho_AB` of the standard protocol.
pub fn build_dqc1_state(inst: &Dqc1Instance) -> Result<DensityMatrix> {
    if !inst.is_uniform() {
        return Err(QcorrError::InvalidParameter(
            "non-uniform weights have no block form; use build_nonmaximal_dqc1".into(),
        ));
    }
    let d = 1 << inst.n;
    let u = inst.unitary.entries();
    let scale = 1.0 / (2 * d) as f64;
    let mut m = CMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        m[(i, i)] = c(scale, 0.0);
        m[(d + i, d + i)] = c(scale, 0.0);
        for j in 0..d {
            m[(d + i, j)] = u[(i, j)] * scale;
            m[(i, d + j)] = u[(j, i)].conj() * scale;
        }
    }
    DensityMatrix::new(m, dqc1_layout(inst.n, false)?)
}

/// `sum_i c_i (|0> + e^(i theta_i)|1>)/sqrt 2 (x) |u_i>_B (x) |e_i>_E` with the
/// instance weights `c_i^2`. The `ABE` dimension is `2^(2n+1)`, so `n = 3`
/// exceeds the dimension cap.
pub fn build_dqc1_purification(inst: &Dqc1Instance) -> Result<PureState> {
    let layout = dqc1_layout(inst.n, true)?;
    let d = 1 << inst.n;
    let mut amp = CVector::zeros(2 * d * d);
    for (i, (&w, &theta)) in inst.weights.iter().zip(&inst.eigenphases).enumerate() {
        let ci = (w / 2.0).sqrt();
        let phase = Complex64::from_polar(1.0, theta);
        for b in 0..d {
            let ub = inst.eigenvectors[(b, i)] * ci;
            amp[b * d + i] += ub;
            amp[d * d + b * d + i] += ub * phase;
        }
    }
    PureState::new(amp, layout)
}

/// Purification for a `B` that starts in `sum_i c_i^2 |u_i><u_i|` rather than
/// `I/2^n`. With uniform weights this is [`build_dqc1_purification`].
pub fn build_nonmaximal_dqc1(inst: &Dqc1Instance) -> Result<PureState> {
    build_dqc1_purification(inst)
}

/// `rho_AB` of the variant, `sum_i c_i^2 |a_i><a_i| (x) |u_i><u_i|` with
/// `|a_i> = (|0> + e^(i theta_i)|1>)/sqrt 2`. Available for every `n`.
pub fn build_nonmaximal_state(inst: &Dqc1Instance) -> Result<DensityMatrix> {
    let d = 1 << inst.n;
    let mut m = CMatrix::zeros(2 * d, 2 * d);
    for (i, (&w, &theta)) in inst.weights.iter().zip(&inst.eigenphases).enumerate() {
        let a = CVector::from_vec(vec![c(1.0, 0.0), Complex64::from_polar(1.0, theta)]);
        let v = a.kronecker(&inst.eigenvectors.column(i));
        m += &v * v.adjoint() * c(w / 2.0, 0.0);
    }
    DensityMatrix::new(m, dqc1_layout(inst.n, false)?)
}

/// Pauli expectations on the clean qubit and the trace read from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceReadout {
    pub n: usize,
    pub sigma_x: f64,
    pub sigma_y: f64,
    /// `<sigma_x> + i <sigma_y>`, equal to `Tr(rho_B U)`.
    pub normalized: Complex64,
    /// `2^n (<sigma_x> + i <sigma_y>)`, equal to `Tr U` in the standard protocol.
    pub estimate: Complex64,
    /// `2^(n+1) (<sigma_x> - i <sigma_y>)`: the estimator under the
    /// `<sigma_x> = Re Tr U / 2^(n+1)`, `<sigma_y> = -Im Tr U / 2^(n+1)` reading.
    pub alternative: Complex64,
}

/// Reads the clean qubit of a state whose first subsystem is the qubit `A`
/// and whose remaining dimension is `2^n`.
pub fn trace_readout(rho: &DensityMatrix) -> Result<TraceReadout> {
    let layout = rho.layout();
    let rest = rho.dim() / layout.dims().first().copied().unwrap_or(1);
    if layout.len() < 2 || layout.dims()[0] != 2 || !rest.is_power_of_two() || rest < 2 {
        return Err(QcorrError::Layout(format!(
            "expected a clean qubit followed by 2^n dimensions, got dims {:?}",
            layout.dims()
        )));
    }
    let n = rest.trailing_zeros() as usize;
    let a = layout.labels()[0].as_str();
    let rho_a = rho.partial_trace(&[a])?;
    let m = rho_a.entries();
    let sigma_x = (m[(0, 1)] + m[(1, 0)]).re;
    let sigma_y = (c(0.0, 1.0) * (m[(0, 1)] - m[(1, 0)])).re;
    let normalized = c(sigma_x, sigma_y);
    Ok(TraceReadout {
        n,
        sigma_x,
        sigma_y,
        normalized,
        estimate: normalized * rest as f64,
        alternative: c(sigma_x, -sigma_y) * (2 * rest) as f64,
    })
}

/// `2^n (<sigma_x> + i <sigma_y>)` on the clean qubit; `Tr U` for
/// [`build_dqc1_state`] output.
pub fn trace_estimate(rho: &DensityMatrix) -> Result<Complex64> {
    Ok(trace_readout(rho)?.estimate)
}

/// How the pair EOFs of a ledger were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EofMethod {
    /// Two-qubit closed form.
    Concurrence,
    /// `E_XY = delta(X|Z) + S(X|Z)` on the pure `ABE` state.
    KoashiWinter,
}

/// Redistribution ledger. `d_xy` measures `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dqc1Ledger {
    pub n: usize,
    pub eof_method: EofMethod,
    pub s_a: f64,
    pub s_b: f64,
    pub s_e: f64,
    pub e_ab: f64,
    pub e_ae: f64,
    pub e_be: f64,
    pub d_ab: f64,
    pub d_ba: f64,
    pub d_ae: f64,
    pub d_be: f64,
    pub e_a_be: f64,
    pub e_b_ae: f64,
    pub e_e_ab: f64,
    /// PPT certificate for `E_AB = 0`; sufficient only for `n = 1`.
    pub negativity_ab: f64,
    /// Only for `n = 1`.
    pub concurrence_ab: Option<f64>,
    pub trace_estimate: Complex64,
    pub exact_trace: Complex64,
    /// `E_BE - (E_E(AB) + delta(B|A) - E_A(BE))`
    pub r8: f64,
    /// `delta(B|E) - (E_E(AB) - E_A(BE))`
    pub r9: f64,
    /// `delta(B|A) - (E_BE - delta(B|E))`
    pub r10: f64,
    pub spread_ba: f64,
    pub spread_be: f64,
}

impl Dqc1Ledger {
    pub fn max_abs_residual(&self) -> f64 {
        self.r8.abs().max(self.r9.abs()).max(self.r10.abs())
    }
}

fn kw_eof(discord: f64, cond_entropy: f64) -> Result<f64> {
    Ok(clamp_measure(discord + cond_entropy, "entanglement of formation")?.0)
}

/// Full ledger of the standard protocol, `n <= 2`.
pub fn dqc1_ledger(inst: &Dqc1Instance, cfg: &OptimizerConfig) -> Result<Dqc1Ledger> {
    if inst.n > MAX_LEDGER_QUBITS {
        return Err(QcorrError::UnsupportedDimension(format!(
            "discord entries need n <= {MAX_LEDGER_QUBITS}, got n = {}; use bipartition_entropies",
            inst.n
        )));
    }
    let rho_ab = build_dqc1_state(inst)?;
    let psi = build_dqc1_purification(inst)?;
    let rho = psi.to_density();
    let s_a = von_neumann_entropy(&psi.reduced(&["A"])?);
    let s_b = von_neumann_entropy(&psi.reduced(&["B"])?);
    let s_e = von_neumann_entropy(&psi.reduced(&["E"])?);
    // pure ABE: S_AB = S_E, S_AE = S_B, S_BE = S_A
    let (s_ab, s_ae) = (s_e, s_b);

    let d_ab = correlation_split(&rho, "A", "B", cfg)?.1;
    let d_ba = correlation_split(&rho, "B", "A", cfg)?.1;
    let d_ae = correlation_split(&rho, "A", "E", cfg)?.1;
    let d_be = correlation_split(&rho, "B", "E", cfg)?.1;

    let (eof_method, e_ab, e_ae, e_be, concurrence_ab) = if inst.n == 1 {
        (
            EofMethod::Concurrence,
            eof_two_qubit(&psi.reduced(&["A", "B"])?)?,
            eof_two_qubit(&psi.reduced(&["A", "E"])?)?,
            eof_two_qubit(&psi.reduced(&["B", "E"])?)?,
            Some(concurrence(&rho_ab)?),
        )
    } else {
        (
            EofMethod::KoashiWinter,
            kw_eof(d_ae.value, s_ae - s_e)?,
            kw_eof(d_ab.value, s_ab - s_b)?,
            kw_eof(d_ba.value, s_ab - s_a)?,
            None,
        )
    };
    let (e_a_be, e_b_ae, e_e_ab) = (s_a, s_b, s_e);
    Ok(Dqc1Ledger {
        n: inst.n,
        eof_method,
        s_a,
        s_b,
        s_e,
        e_ab,
        e_ae,
        e_be,
        d_ab: d_ab.value,
        d_ba: d_ba.value,
        d_ae: d_ae.value,
        d_be: d_be.value,
        e_a_be,
        e_b_ae,
        e_e_ab,
        negativity_ab: negativity(&rho_ab, "A")?,
        concurrence_ab,
        trace_estimate: trace_estimate(&rho_ab)?,
        exact_trace: inst.unitary.trace(),
        r8: e_be - (e_e_ab + d_ba.value - e_a_be),
        r9: d_be.value - (e_e_ab - e_a_be),
        r10: d_ba.value - (e_be - d_be.value),
        spread_ba: d_ba.spread,
        spread_be: d_be.spread,
    })
}

/// Bipartition entropies `(E_A(BE), E_B(AE), E_E(AB))` computed from `rho_AB`
/// alone, so they stay available for `n = 3`.
pub fn bipartition_entropies(inst: &Dqc1Instance) -> Result<[f64; 3]> {
    let rho_ab = if inst.is_uniform() {
        build_dqc1_state(inst)?
    } else {
        build_nonmaximal_state(inst)?
    };
    Ok([
        von_neumann_entropy(&rho_ab.partial_trace(&["A"])?),
        von_neumann_entropy(&rho_ab.partial_trace(&["B"])?),
        von_neumann_entropy(&rho_ab),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli_z;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn sigma_z() -> Dqc1Instance {
        Dqc1Instance::new(UnitaryMatrix::new(pauli_z()).unwrap()).unwrap()
    }

    fn identity(n: usize) -> Dqc1Instance {
        let d = 1 << n;
        Dqc1Instance::new(UnitaryMatrix::new(CMatrix::identity(d, d)).unwrap()).unwrap()
    }

    fn phase_gate() -> Dqc1Instance {
        Dqc1Instance::new(UnitaryMatrix::diagonal_phases(&[0.0, FRAC_PI_2]).unwrap()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn identity_gives_plus_state() {
        let rho = build_dqc1_state(&identity(1)).unwrap();
        let plus = CMatrix::from_element(2, 2, c(0.5, 0.0));
        let expected = linalg::kron(&plus, &(CMatrix::identity(2, 2) * c(0.5, 0.0)));
        assert!(linalg::max_abs_diff(rho.entries(), &expected) < 1e-15);
    }

    #[test]
    fn sigma_z_state() {
        let rho = build_dqc1_state(&sigma_z()).unwrap();
        let plus = CMatrix::from_element(2, 2, c(0.5, 0.0));
        let minus =
            CMatrix::from_row_slice(2, 2, &[c(0.5, 0.), c(-0.5, 0.), c(-0.5, 0.), c(0.5, 0.)]);
        let p0 = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]);
        let p1 = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]);
        let expected = (linalg::kron(&plus, &p0) + linalg::kron(&minus, &p1)) * c(0.5, 0.0);
        assert!(linalg::max_abs_diff(rho.entries(), &expected) < 1e-15);
    }

    #[test]
    fn clean_qubit_coherence() {
        for seed in 0..5 {
            let inst = Dqc1Instance::from_seed(2, seed).unwrap();
            let rho_a = build_dqc1_state(&inst)
                .unwrap()
                .partial_trace(&["A"])
                .unwrap();
            let expected = inst.unitary().trace().conj() / 8.0;
            assert!(close(rho_a.entries()[(0, 1)], expected, 1e-14));
        }
    }

    #[test]
    fn trace_estimate_examples() {
        let est = |i: &Dqc1Instance| trace_estimate(&build_dqc1_state(i).unwrap()).unwrap();
        assert!(close(est(&identity(1)), c(2.0, 0.0), 1e-12));
        assert!(close(est(&sigma_z()), c(0.0, 0.0), 1e-12));
        assert!(close(est(&phase_gate()), c(1.0, 1.0), 1e-12));
        let r = trace_readout(&build_dqc1_state(&phase_gate()).unwrap()).unwrap();
        assert_abs_diff_eq!(r.sigma_x, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.sigma_y, 0.5, epsilon = 1e-15);
        assert!(close(r.alternative, c(2.0, -2.0), 1e-12));
    }

    #[test]
    fn trace_readout_rejects_bad_layouts() {
        let l = SubsystemLayout::new(vec![3, 2], vec!["A", "B"]).unwrap();
        assert!(trace_readout(&DensityMatrix::maximally_mixed(l)).is_err());
        let l = SubsystemLayout::new(vec![2, 3], vec!["A", "B"]).unwrap();
        assert!(trace_readout(&DensityMatrix::maximally_mixed(l)).is_err());
    }

    #[test]
    fn purification_reproduces_block_state() {
        for n in 1..=2 {
            for seed in 0..3 {
                let inst = Dqc1Instance::from_seed(n, seed).unwrap();
                let psi = build_dqc1_purification(&inst).unwrap();
                let ab = psi.reduced(&["A", "B"]).unwrap();
                let rho = build_dqc1_state(&inst).unwrap();
                assert!(linalg::max_abs_diff(ab.entries(), rho.entries()) < 1e-9);
            }
        }
    }

    #[test]
    fn eigenphases_in_range() {
        for seed in 0..10 {
            let inst = Dqc1Instance::from_seed(3, seed).unwrap();
            for &t in inst.eigenphases() {
                assert!(t > -std::f64::consts::PI && t <= std::f64::consts::PI);
            }
        }
        let pi = Dqc1Instance::new(
            UnitaryMatrix::diagonal_phases(&[std::f64::consts::PI, -std::f64::consts::PI]).unwrap(),
        )
        .unwrap();
        for &t in pi.eigenphases() {
            assert_abs_diff_eq!(t, std::f64::consts::PI, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(Dqc1Instance::from_seed(0, 1).is_err());
        assert!(Dqc1Instance::from_seed(4, 1).is_err());
        assert!(matches!(
            build_dqc1_purification(&Dqc1Instance::from_seed(3, 1).unwrap()),
            Err(QcorrError::DimensionTooLarge { .. })
        ));
        assert!(Dqc1Instance::new(UnitaryMatrix::new(CMatrix::identity(3, 3)).unwrap()).is_err());
        assert!(sigma_z().with_weights(&[0.5]).is_err());
        assert!(sigma_z().with_weights(&[0.7, 0.2]).is_err());
        assert!(sigma_z().with_weights(&[1.5, -0.5]).is_err());
        let skewed = sigma_z().with_weights(&[0.75, 0.25]).unwrap();
        assert!(build_dqc1_state(&skewed).is_err());
    }

    #[test]
    fn nonmaximal_variant() {
        let uniform = Dqc1Instance::from_seed(2, 9).unwrap();
        assert_eq!(
            build_nonmaximal_dqc1(&uniform).unwrap().amplitudes(),
            build_dqc1_purification(&uniform).unwrap().amplitudes()
        );

        let skewed = sigma_z().with_weights(&[0.75, 0.25]).unwrap();
        let ab = build_nonmaximal_dqc1(&skewed)
            .unwrap()
            .reduced(&["A", "B"])
            .unwrap();
        let direct = build_nonmaximal_state(&skewed).unwrap();
        assert!(linalg::max_abs_diff(ab.entries(), direct.entries()) < 1e-12);
        let r = trace_readout(&ab).unwrap();
        assert!(close(r.normalized, c(0.5, 0.0), 1e-12));
        assert!(close(r.estimate, c(1.0, 0.0), 1e-12));

        let theta = 0.7;
        let inst = Dqc1Instance::new(UnitaryMatrix::diagonal_phases(&[0.0, theta]).unwrap())
            .unwrap()
            .with_weights(&[1.0, 0.0])
            .unwrap();
        let psi = build_nonmaximal_dqc1(&inst).unwrap();
        let ab = psi.reduced(&["A", "B"]).unwrap();
        assert!(close(
            trace_readout(&ab).unwrap().normalized,
            c(1.0, 0.0),
            1e-12
        ));
        assert_abs_diff_eq!(eof_two_qubit(&ab).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(psi.reduced(&["A"]).unwrap().purity(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn b_entropy_falls_toward_degenerate_weights() {
        let base = Dqc1Instance::from_seed(3, 4).unwrap();
        let mut last = f64::INFINITY;
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let w: Vec<f64> = (0..8)
                .map(|i| (1.0 - t) * 0.125 + if i == 0 { t } else { 0.0 })
                .collect();
            let inst = base.clone().with_weights(&w).unwrap();
            let s_b = bipartition_entropies(&inst).unwrap()[1];
            assert!(s_b <= last + 1e-12);
            last = s_b;
        }
        assert_abs_diff_eq!(last, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sigma_z_ledger() {
        let l = dqc1_ledger(&sigma_z(), &OptimizerConfig::default()).unwrap();
        for d in [l.d_ab, l.d_ba, l.d_ae, l.d_be] {
            assert_abs_diff_eq!(d, 0.0, epsilon = 1e-6);
        }
        // (|+>|00> + |->|11>)/sqrt 2: B and E only share classical
        // correlations, the bit of entanglement sits across A:(BE)
        assert_abs_diff_eq!(l.e_be, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(l.e_a_be, 1.0, epsilon = 1e-9);
        assert!(l.max_abs_residual() <= 1e-6, "{l:?}");
    }

    #[test]
    fn identity_ledger() {
        let l = dqc1_ledger(&identity(1), &OptimizerConfig::default()).unwrap();
        assert_abs_diff_eq!(l.d_ba, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(l.d_be, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(l.e_be, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(l.e_a_be, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn phase_gate_has_discord_without_entanglement() {
        let l = dqc1_ledger(&phase_gate(), &OptimizerConfig::default()).unwrap();
        assert!(l.d_ba >= 0.1, "{l:?}");
        assert!(l.negativity_ab <= 1e-10);
        assert_abs_diff_eq!(l.concurrence_ab.unwrap(), 0.0, epsilon = 1e-10);
        assert!(l.max_abs_residual() <= 1e-6, "{l:?}");
    }

    #[test]
    fn two_qubit_ledger_and_cap() {
        let inst = Dqc1Instance::from_seed(2, 3).unwrap();
        let l = dqc1_ledger(&inst, &OptimizerConfig::default()).unwrap();
        assert_eq!(l.eof_method, EofMethod::KoashiWinter);
        assert!(l.concurrence_ab.is_none());
        assert!(close(l.trace_estimate, l.exact_trace, 1e-10));
        assert!(l.negativity_ab <= 1e-10);
        let big = Dqc1Instance::from_seed(3, 3).unwrap();
        assert!(matches!(
            dqc1_ledger(&big, &OptimizerConfig::default()),
            Err(QcorrError::UnsupportedDimension(_))
        ));
        let [s_a, s_b, s_e] = bipartition_entropies(&big).unwrap();
        assert_abs_diff_eq!(s_b, 3.0, epsilon = 1e-9);
        assert!(s_a >= 0.0 && s_e >= 0.0);
    }
}
