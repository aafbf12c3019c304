//! Seeded Haar-random states and unitaries.
//!
//! Every sampler builds its own ChaCha stream from the seed, so results are
//! reproducible and independent of call order or thread.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{QcorrError, Result};
use crate::linalg::{c, CMatrix, CVector};
use crate::state::{DensityMatrix, PureState, SubsystemLayout, UnitaryMatrix, MAX_DIM};

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn random_pure_state(layout: &SubsystemLayout, seed: u64) -> PureState {
    let mut rng = rng_from_seed(seed);
    let d = layout.total_dim();
    let v = CVector::from_fn(d, |_, _| complex_gaussian(&mut rng));
    PureState::normalized(v, layout.clone()).expect("gaussian vector is nonzero")
}

/// Haar-random unitary: QR of a Ginibre matrix with the diagonal of the
/// triangular factor rotated onto the positive reals.
pub fn random_unitary(dim: usize, seed: u64) -> Result<UnitaryMatrix> {
    if dim == 0 || dim > MAX_DIM {
        return Err(QcorrError::InvalidParameter(format!(
            "unitary dimension {dim} outside 1..={MAX_DIM}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(&mut rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            c(1.0, 0.0)
        };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    UnitaryMatrix::new(q)
}

/// Random density matrix `G G^dagger / Tr(G G^dagger)` with `G` a `dim x rank`
/// Ginibre matrix (Hilbert–Schmidt measure when `rank == dim`).
pub fn random_density_matrix(
    layout: &SubsystemLayout,
    rank: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    let d = layout.total_dim();
    if rank == 0 || rank > d {
        return Err(QcorrError::InvalidParameter(format!(
            "rank {rank} outside 1..={d}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let g = CMatrix::from_fn(d, rank, |_, _| complex_gaussian(&mut rng));
    let m = &g * g.adjoint();
    let tr = m.trace();
    let mut rho = m / tr;
    // exact Hermitian symmetry
    for i in 0..d {
        rho[(i, i)].im = 0.0;
        for j in 0..i {
            rho[(j, i)] = rho[(i, j)].conj();
        }
    }
    DensityMatrix::new(rho, layout.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pure_state_is_deterministic_and_normalized() {
        let l = SubsystemLayout::qubits(&["A", "B", "E"]).unwrap();
        let a = random_pure_state(&l, 7);
        let b = random_pure_state(&l, 7);
        assert_eq!(a, b);
        assert_ne!(a, random_pure_state(&l, 8));
        for seed in 0..50 {
            assert_abs_diff_eq!(
                random_pure_state(&l, seed).amplitudes().norm(),
                1.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn haar_first_moment_of_qubit_population() {
        let l = SubsystemLayout::qubits(&["A"]).unwrap();
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|s| random_pure_state(&l, s).amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn unitary_residual_and_determinism() {
        for dim in 1..=16 {
            for seed in 0..5 {
                let u = random_unitary(dim, seed).unwrap();
                let id = CMatrix::identity(dim, dim);
                assert!(max_abs_diff(&(u.entries() * u.entries().adjoint()), &id) < 1e-10);
            }
        }
        assert_eq!(random_unitary(4, 3).unwrap(), random_unitary(4, 3).unwrap());
        let scalar = random_unitary(1, 11).unwrap();
        assert_abs_diff_eq!(scalar.entries()[(0, 0)].norm(), 1.0, epsilon = 1e-14);
        assert!(random_unitary(0, 1).is_err());
    }

    #[test]
    fn haar_second_moment_of_trace() {
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|s| random_unitary(2, s).unwrap().trace().norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0).abs() < 0.05, "mean |Tr U|^2 = {mean}");
    }

    #[test]
    fn random_density_is_valid() {
        let l = SubsystemLayout::qubits(&["A", "B"]).unwrap();
        let rho = random_density_matrix(&l, 4, 5).unwrap();
        assert_abs_diff_eq!(rho.entries().trace().re, 1.0, epsilon = 1e-12);
        assert!(random_density_matrix(&l, 5, 5).is_err());
    }
}
