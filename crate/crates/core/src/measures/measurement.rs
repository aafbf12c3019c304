use num_complex::Complex64;

use crate::error::{QcorrError, Result};
use crate::linalg::{c, CMatrix, CVector};

use super::entropy::entropy_bits;

/// Probabilities below this are treated as impossible outcomes.
pub const OUTCOME_CUTOFF: f64 = 1e-12;

/// Number of real parameters used for a basis of dimension `d`: one angle
/// and one phase per two-level rotation.
pub fn param_count(d: usize) -> usize {
    d * (d - 1)
}

/// Unitary `G_(0,1) G_(0,2) ... G_(d-2,d-1)`, each factor a rotation by
/// `params[2k]` in the plane of two basis vectors with relative phase
/// `params[2k+1]`. Every orthonormal basis is reached up to column phases,
/// which do not change the projectors.
pub fn basis_unitary(d: usize, params: &[f64]) -> CMatrix {
    debug_assert_eq!(params.len(), param_count(d));
    let mut u = CMatrix::identity(d, d);
    let mut k = 0;
    for a in 0..d {
        for b in a + 1..d {
            let (s, co) = params[k].sin_cos();
            let phase = Complex64::from_polar(1.0, params[k + 1]);
            k += 2;
            for row in 0..d {
                let ua = u[(row, a)];
                let ub = u[(row, b)];
                u[(row, a)] = ua * co + ub * phase * s;
                u[(row, b)] = ub * co - ua * phase.conj() * s;
            }
        }
    }
    u
}

/// Rank-1 projective measurement on one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    sub: String,
    params: Vec<f64>,
    basis: CMatrix,
}

impl Measurement {
    pub fn from_params(sub: &str, d: usize, params: Vec<f64>) -> Result<Self> {
        if params.len() != param_count(d) {
            return Err(QcorrError::InvalidParameter(format!(
                "a {d}-dimensional basis takes {} parameters, got {}",
                param_count(d),
                params.len()
            )));
        }
        let basis = basis_unitary(d, &params);
        Ok(Self {
            sub: sub.to_string(),
            params,
            basis,
        })
    }

    /// Measurement in the computational basis.
    pub fn computational(sub: &str, d: usize) -> Self {
        Self::from_params(sub, d, vec![0.0; param_count(d)]).expect("parameter count matches")
    }

    pub fn sub(&self) -> &str {
        &self.sub
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Measurement basis vectors as columns.
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn vector(&self, outcome: usize) -> CVector {
        self.basis.column(outcome).into_owned()
    }

    /// `|b_x><b_x|` for every outcome.
    pub fn projectors(&self) -> Vec<CMatrix> {
        (0..self.dim())
            .map(|x| {
                let v = self.vector(x);
                &v * v.adjoint()
            })
            .collect()
    }
}

/// Unnormalized post-measurement states `<b|rho_XY|b>` of the unmeasured side
/// for each basis vector `b` (columns of `basis`). `rho_xy` is ordered with
/// the unmeasured subsystem (dimension `dx`) first.
pub(crate) fn conditional_states(rho_xy: &CMatrix, dx: usize, basis: &CMatrix) -> Vec<CMatrix> {
    let dy = basis.nrows();
    (0..dy)
        .map(|x| {
            let b = basis.column(x);
            let mut sigma = CMatrix::zeros(dx, dx);
            for i in 0..dx {
                for j in 0..=i {
                    let mut acc = c(0.0, 0.0);
                    for k in 0..dy {
                        let bk = b[k].conj();
                        if bk == c(0.0, 0.0) {
                            continue;
                        }
                        let mut row = c(0.0, 0.0);
                        for l in 0..dy {
                            row += rho_xy[(i * dy + k, j * dy + l)] * b[l];
                        }
                        acc += bk * row;
                    }
                    sigma[(i, j)] = acc;
                    sigma[(j, i)] = acc.conj();
                }
            }
            sigma
        })
        .collect()
}

/// `sum_x p_x S(rho_X^x)` for the measurement whose basis vectors are the
/// columns of `basis`.
pub(crate) fn post_measurement_entropy(rho_xy: &CMatrix, dx: usize, basis: &CMatrix) -> f64 {
    conditional_states(rho_xy, dx, basis)
        .iter()
        .map(|sigma| {
            let p: f64 = (0..dx).map(|i| sigma[(i, i)].re).sum();
            if p < OUTCOME_CUTOFF {
                return 0.0;
            }
            let spectrum: Vec<f64> = crate::linalg::eigvalsh_unchecked(sigma)
                .into_iter()
                .map(|w| w / p)
                .collect();
            p * entropy_bits(&spectrum)
        })
        .sum()
}
