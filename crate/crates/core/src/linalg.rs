//! Dense complex linear algebra helpers backed by nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{QcorrError, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Tolerance on the Hermiticity of matrices handed to [`eigh`].
pub const HERMITIAN_TOL: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest absolute entry of `m - m^dagger`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the unitary whose columns are the
/// matching eigenvectors, so that `V diag(w) V^dagger` reproduces the input.
pub fn eigh(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    check_hermitian(h)?;
    let eig = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..h.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), h.ncols(), |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

/// Ascending eigenvalues of a Hermitian matrix, with a closed form for 2x2.
pub fn eigvalsh(h: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    Ok(eigvalsh_unchecked(h))
}

/// [`eigvalsh`] without the Hermiticity check; only the lower triangle and
/// the real diagonal are read.
pub(crate) fn eigvalsh_unchecked(h: &CMatrix) -> Vec<f64> {
    match h.nrows() {
        1 => vec![h[(0, 0)].re],
        2 => {
            let (a, d) = (h[(0, 0)].re, h[(1, 1)].re);
            let b = h[(1, 0)].norm();
            let mean = 0.5 * (a + d);
            let radius = (0.25 * (a - d) * (a - d) + b * b).sqrt();
            vec![mean - radius, mean + radius]
        }
        _ => {
            let mut w: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
            w.sort_by(f64::total_cmp);
            w
        }
    }
}

fn check_hermitian(h: &CMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(QcorrError::invariant(
            "shape",
            format!("matrix is {}x{}, expected square", h.nrows(), h.ncols()),
        ));
    }
    let defect = hermiticity_defect(h);
    if defect > HERMITIAN_TOL {
        return Err(QcorrError::invariant(
            "hermiticity",
            format!("max |h - h^dagger| = {defect:.3e}"),
        ));
    }
    Ok(())
}

/// Singular values of a complex matrix, descending.
pub(crate) fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}
