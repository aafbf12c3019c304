//! Entanglement of formation: closed form for two qubits, reduced entropy for
//! pure states, and the monogamy route for pure tripartite states.

use crate::error::{QcorrError, Result};
use crate::linalg::{self, c, CMatrix};
use crate::state::{DensityMatrix, PureState, RANK_CUTOFF};

use super::discord::{quantum_discord, MeasureResult, OptimizerConfig};
use super::entropy::{binary_entropy, conditional_entropy, von_neumann_entropy};

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.layout().dims() != [2, 2] {
        return Err(QcorrError::UnsupportedDimension(format!(
            "closed-form EOF needs a [2, 2] layout, got {:?}",
            rho.layout().dims()
        )));
    }
    Ok(())
}

/// Two-qubit concurrence `max(0, l1 - l2 - l3 - l4)`.
///
/// The `l_i` are the singular values of `tau_ij = v_i^T (Y (x) Y) v_j`, where
/// `v_i = sqrt(w_i) e_i` runs over the eigen-decomposition of `rho`; they equal
/// the square roots of the eigenvalues of `rho (Y (x) Y) rho^* (Y (x) Y)`.
/// Working with singular values keeps near-zero `l_i` at machine precision
/// instead of the square root of it.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let (w, v) = linalg::eigh(rho.entries())?;
    let support: Vec<usize> = (0..4).filter(|&k| w[k] > RANK_CUTOFF).collect();
    let r = support.len();
    let yy = linalg::kron(&linalg::pauli_y(), &linalg::pauli_y());
    let vecs = CMatrix::from_fn(4, r, |i, k| {
        v[(i, support[k])] * c(w[support[k]].sqrt(), 0.0)
    });
    let tau = vecs.transpose() * yy * &vecs;
    let mut sv = linalg::singular_values(&tau);
    sv.resize(4, 0.0);
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

/// EOF in bits as a function of the concurrence.
pub fn eof_from_concurrence(concurrence: f64) -> f64 {
    let cc = concurrence.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - cc * cc).sqrt()))
}

/// Closed-form two-qubit entanglement of formation, in bits.
pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// EOF of a pure state across the cut `side | rest`: the entropy of the
/// reduced state on `side`.
pub fn eof_pure_bipartite(psi: &PureState, side: &[&str]) -> Result<f64> {
    let positions = psi.layout().positions(side)?;
    if positions.is_empty() || positions.len() == psi.layout().len() {
        return Err(QcorrError::InvalidParameter(format!(
            "side {side:?} must be a nonempty proper subset of {:?}",
            psi.layout().labels()
        )));
    }
    Ok(von_neumann_entropy(&psi.reduced(side)?))
}

/// Label of the third subsystem of a tripartite state.
pub(crate) fn third_label<'a>(labels: &'a [String], a: &str, b: &str) -> Result<&'a str> {
    if labels.len() != 3 {
        return Err(QcorrError::Layout(format!(
            "expected exactly three subsystems, found {}",
            labels.len()
        )));
    }
    if a == b {
        return Err(QcorrError::InvalidParameter(format!("pair repeats `{a}`")));
    }
    for l in [a, b] {
        if !labels.iter().any(|x| x == l) {
            return Err(QcorrError::UnknownLabel(l.to_string()));
        }
    }
    Ok(labels
        .iter()
        .find(|l| l.as_str() != a && l.as_str() != b)
        .expect("three distinct labels")
        .as_str())
}

/// `E(a:b) = delta(a|e) + S(a|e)` on a pure tripartite state, with `e` the
/// remaining subsystem and the measurement on `e`. An under-optimized
/// measurement makes this an upper bound on the true EOF.
pub fn eof_via_koashi_winter(
    psi: &PureState,
    a: &str,
    b: &str,
    cfg: &OptimizerConfig,
) -> Result<MeasureResult> {
    let e = third_label(psi.layout().labels(), a, b)?;
    let rho_ae = psi.reduced(&[a, e])?;
    let discord = quantum_discord(&rho_ae, a, e, cfg)?;
    let value = discord.value + conditional_entropy(&rho_ae, e)?;
    Ok(MeasureResult {
        value: value.max(0.0),
        clamped: discord.clamped || value < 0.0,
        ..discord
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CVector;
    use crate::state::SubsystemLayout;
    use approx::assert_abs_diff_eq;

    fn ket(layout: &[&str], v: &[f64]) -> PureState {
        let v = CVector::from_iterator(v.len(), v.iter().map(|&x| c(x, 0.)));
        PureState::normalized(v, SubsystemLayout::qubits(layout).unwrap()).unwrap()
    }

    fn w_state() -> PureState {
        ket(&["A", "B", "E"], &[0., 1., 1., 0., 1., 0., 0., 0.])
    }

    #[test]
    fn bell_and_product() {
        let bell = ket(&["A", "B"], &[1., 0., 0., 1.]).to_density();
        assert_abs_diff_eq!(concurrence(&bell).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eof_two_qubit(&bell).unwrap(), 1.0, epsilon = 1e-12);
        let prod = ket(&["A", "B"], &[0.6, 0.8, 0., 0.]).to_density();
        assert_eq!(eof_two_qubit(&prod).unwrap(), 0.0);
        let mixed = DensityMatrix::maximally_mixed(SubsystemLayout::qubits(&["A", "B"]).unwrap());
        assert_eq!(eof_two_qubit(&mixed).unwrap(), 0.0);
    }

    #[test]
    fn w_state_marginal() {
        let ab = w_state().reduced(&["A", "B"]).unwrap();
        assert_abs_diff_eq!(concurrence(&ab).unwrap(), 2.0 / 3.0, epsilon = 1e-12);
        // h((1 + sqrt(1 - 4/9)) / 2)
        let p: f64 = 0.5 * (1.0 + (5.0f64 / 9.0).sqrt());
        let expected = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert_abs_diff_eq!(eof_two_qubit(&ab).unwrap(), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(expected, 0.5500, epsilon = 1e-4);
    }

    #[test]
    fn rejects_non_qubit_pairs() {
        let l = SubsystemLayout::new(vec![2, 3], vec!["A", "B"]).unwrap();
        assert!(matches!(
            eof_two_qubit(&DensityMatrix::maximally_mixed(l)),
            Err(QcorrError::UnsupportedDimension(_))
        ));
    }

    #[test]
    fn pure_bipartite_eof() {
        let ghz = ket(&["A", "B", "E"], &[1., 0., 0., 0., 0., 0., 0., 1.]);
        assert_abs_diff_eq!(
            eof_pure_bipartite(&ghz, &["A"]).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let prod = ket(&["A", "B"], &[0.6, 0.8, 0., 0.]);
        assert_abs_diff_eq!(
            eof_pure_bipartite(&prod, &["A"]).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert!(eof_pure_bipartite(&ghz, &["A", "B", "E"]).is_err());
        assert!(eof_pure_bipartite(&ghz, &[]).is_err());
    }

    #[test]
    fn koashi_winter_route_examples() {
        let cfg = OptimizerConfig::default();
        // |Phi+>_AB (x) |0>_E
        let phi_zero = ket(&["A", "B", "E"], &[1., 0., 0., 0., 0., 0., 1., 0.]);
        assert_abs_diff_eq!(
            eof_via_koashi_winter(&phi_zero, "A", "B", &cfg)
                .unwrap()
                .value,
            1.0,
            epsilon = 1e-6
        );
        let ghz = ket(&["A", "B", "E"], &[1., 0., 0., 0., 0., 0., 0., 1.]);
        assert_abs_diff_eq!(
            eof_via_koashi_winter(&ghz, "A", "B", &cfg).unwrap().value,
            0.0,
            epsilon = 1e-6
        );
        let w = w_state();
        let exact = eof_two_qubit(&w.reduced(&["A", "B"]).unwrap()).unwrap();
        assert_abs_diff_eq!(
            eof_via_koashi_winter(&w, "A", "B", &cfg).unwrap().value,
            exact,
            epsilon = 1e-6
        );
        assert!(
            eof_via_koashi_winter(&ket(&["A", "B"], &[1., 0., 0., 1.]), "A", "B", &cfg).is_err()
        );
    }
}
