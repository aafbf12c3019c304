//! Dense state representations and the structural operations on them.

mod layout;

pub use layout::{SubsystemLayout, MAX_DIM};

use num_complex::Complex64;

use crate::error::{QcorrError, Result};
use crate::linalg::{self, c, CMatrix, CVector};

/// Norm tolerance for pure states.
pub const NORM_TOL: f64 = 1e-10;
/// Hermiticity tolerance (max element) for density matrices.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Trace tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted for a density matrix.
pub const POSITIVITY_TOL: f64 = -1e-9;
/// Unitarity tolerance (max element of `U U^dagger - I`).
pub const UNITARITY_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are treated as zero when purifying.
pub const RANK_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CVector,
    layout: SubsystemLayout,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    layout: SubsystemLayout,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: CMatrix,
}

/// Either kind of state, for operations that accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl PureState {
    pub fn new(amplitudes: CVector, layout: SubsystemLayout) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(QcorrError::invariant(
                "shape",
                format!(
                    "{} amplitudes for layout of dimension {}",
                    amplitudes.len(),
                    layout.total_dim()
                ),
            ));
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(QcorrError::invariant("norm", format!("|psi| = {norm:.12}")));
        }
        Ok(Self { amplitudes, layout })
    }

    /// Builds a state from unnormalized amplitudes.
    pub fn normalized(amplitudes: CVector, layout: SubsystemLayout) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(QcorrError::invariant(
                "norm",
                "cannot normalize a zero vector",
            ));
        }
        Self::new(amplitudes / c(norm, 0.0), layout)
    }

    /// Computational basis state `|digits>`.
    pub fn basis(layout: SubsystemLayout, digits: &[usize]) -> Result<Self> {
        if digits.len() != layout.len() || digits.iter().zip(layout.dims()).any(|(&i, &d)| i >= d) {
            return Err(QcorrError::InvalidParameter(format!(
                "basis digits {digits:?} do not fit dims {:?}",
                layout.dims()
            )));
        }
        let index = digits
            .iter()
            .zip(layout.dims())
            .fold(0, |acc, (&i, &d)| acc * d + i);
        let mut amps = CVector::zeros(layout.total_dim());
        amps[index] = c(1.0, 0.0);
        Self::new(amps, layout)
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            entries: &self.amplitudes * self.amplitudes.adjoint(),
            layout: self.layout.clone(),
        }
    }

    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(PureState {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
            layout,
        })
    }

    /// Reduced density matrix on `keep`, computed directly from the amplitudes.
    pub fn reduced(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let kept = checked_keep(&self.layout, keep)?;
        let (map, groups) = split_indices(&self.layout, &kept);
        let kept_layout = self.layout.select(&kept);
        let dk = kept_layout.total_dim();
        let mut m = CMatrix::zeros(dk, groups);
        for (i, &(k, t)) in map.iter().enumerate() {
            m[(k, t)] = self.amplitudes[i];
        }
        Ok(DensityMatrix {
            entries: &m * m.adjoint(),
            layout: kept_layout,
        })
    }
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(entries: CMatrix, layout: SubsystemLayout) -> Result<Self> {
        let dim = layout.total_dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(QcorrError::invariant(
                "shape",
                format!(
                    "matrix is {}x{}, layout needs {dim}x{dim}",
                    entries.nrows(),
                    entries.ncols()
                ),
            ));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(QcorrError::invariant("finite", "non-finite matrix entry"));
        }
        let defect = linalg::hermiticity_defect(&entries);
        if defect > HERMITIAN_TOL {
            return Err(QcorrError::invariant(
                "hermiticity",
                format!("max |rho - rho^dagger| = {defect:.3e}"),
            ));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(QcorrError::invariant(
                "trace",
                format!("trace = {:.12}{:+.3e}i", trace.re, trace.im),
            ));
        }
        let min_eig = linalg::eigvalsh_unchecked(&entries)[0];
        if min_eig < POSITIVITY_TOL {
            return Err(QcorrError::invariant(
                "positivity",
                format!("minimum eigenvalue {min_eig:.3e}"),
            ));
        }
        Ok(Self { entries, layout })
    }

    /// `I / d` on the given layout.
    pub fn maximally_mixed(layout: SubsystemLayout) -> Self {
        let d = layout.total_dim();
        Self {
            entries: CMatrix::identity(d, d) / c(d as f64, 0.0),
            layout,
        }
    }

    /// Convex combination `sum_k w_k rho_k` of states sharing one layout.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| QcorrError::InvalidParameter("empty mixture".into()))?;
        let mut acc = CMatrix::zeros(first.dim(), first.dim());
        for (w, rho) in parts {
            if rho.layout != first.layout {
                return Err(QcorrError::Layout(
                    "mixture components differ in layout".into(),
                ));
            }
            if *w < 0.0 {
                return Err(QcorrError::InvalidParameter(format!("negative weight {w}")));
            }
            acc += &rho.entries * c(*w, 0.0);
        }
        Self::new(acc, first.layout.clone())
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigvalsh_unchecked(&self.entries)
    }

    /// Purity `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(DensityMatrix {
            entries: linalg::kron(&self.entries, &other.entries),
            layout,
        })
    }

    /// Traces out every subsystem not named in `keep`. The result keeps the
    /// surviving labels in their original order.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let kept = checked_keep(&self.layout, keep)?;
        if kept.len() == self.layout.len() {
            return Ok(self.clone());
        }
        let (map, groups) = split_indices(&self.layout, &kept);
        let kept_layout = self.layout.select(&kept);
        let dk = kept_layout.total_dim();
        let mut by_group: Vec<Vec<(usize, usize)>> = vec![Vec::new(); groups];
        for (i, &(k, t)) in map.iter().enumerate() {
            by_group[t].push((k, i));
        }
        let mut out = CMatrix::zeros(dk, dk);
        for members in &by_group {
            for &(ka, ia) in members {
                for &(kb, ib) in members {
                    out[(ka, kb)] += self.entries[(ia, ib)];
                }
            }
        }
        Ok(DensityMatrix {
            entries: out,
            layout: kept_layout,
        })
    }

    /// Reorders subsystems so that `order` (a permutation of all labels) becomes
    /// the new layout order.
    pub fn permute(&self, order: &[&str]) -> Result<DensityMatrix> {
        if order.len() != self.layout.len() {
            return Err(QcorrError::Layout(format!(
                "permutation lists {} labels, layout has {}",
                order.len(),
                self.layout.len()
            )));
        }
        let positions = order
            .iter()
            .map(|l| self.layout.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = positions.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != positions.len() {
            return Err(QcorrError::Layout("permutation repeats a label".into()));
        }
        if positions.iter().enumerate().all(|(i, &p)| i == p) {
            return Ok(self.clone());
        }
        let new_layout = self.layout.select(&positions);
        let d = self.dim();
        let new_index: Vec<usize> = (0..d)
            .map(|i| {
                let digits = self.layout.digits(i);
                positions
                    .iter()
                    .zip(new_layout.dims())
                    .fold(0, |acc, (&p, &dim)| acc * dim + digits[p])
            })
            .collect();
        let mut out = CMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                out[(new_index[i], new_index[j])] = self.entries[(i, j)];
            }
        }
        Ok(DensityMatrix {
            entries: out,
            layout: new_layout,
        })
    }

    /// Partial transpose on subsystem `sub`. Pure index permutation, so applying
    /// it twice returns the input bit for bit.
    pub fn partial_transpose(&self, sub: &str) -> Result<CMatrix> {
        let pos = self.layout.index_of(sub)?;
        Ok(partial_transpose_raw(&self.entries, &self.layout, pos))
    }

    /// Purifies into `|psi> = sum_k sqrt(w_k) |v_k> (x) |k>_anc` with the ancilla
    /// appended last. The ancilla dimension equals the rank (eigenvalues above
    /// [`RANK_CUTOFF`]), clamped to at least 2.
    pub fn purify(&self, ancilla_label: &str) -> Result<PureState> {
        if self.layout.contains(ancilla_label) {
            return Err(QcorrError::Layout(format!(
                "ancilla label `{ancilla_label}` already in use"
            )));
        }
        let (w, v) = linalg::eigh(&self.entries)?;
        let support: Vec<usize> = (0..w.len()).rev().filter(|&k| w[k] > RANK_CUTOFF).collect();
        let anc_dim = support.len().max(2);
        let anc = SubsystemLayout::new(vec![anc_dim], vec![ancilla_label])?;
        let layout = self.layout.concat(&anc)?;
        let d = self.dim();
        let mut amps = CVector::zeros(d * anc_dim);
        for (slot, &k) in support.iter().enumerate() {
            let s = w[k].sqrt();
            for i in 0..d {
                amps[i * anc_dim + slot] = v[(i, k)] * s;
            }
        }
        PureState::normalized(amps, layout)
    }
}

impl UnitaryMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(QcorrError::invariant(
                "shape",
                format!("unitary is {}x{}", entries.nrows(), entries.ncols()),
            ));
        }
        if entries.nrows() > MAX_DIM {
            return Err(QcorrError::DimensionTooLarge {
                dim: entries.nrows(),
                max: MAX_DIM,
            });
        }
        let n = entries.nrows();
        let defect =
            linalg::max_abs_diff(&(&entries * entries.adjoint()), &CMatrix::identity(n, n));
        if !defect.is_finite() || defect > UNITARITY_TOL {
            return Err(QcorrError::invariant(
                "unitarity",
                format!("max |U U^dagger - I| = {defect:.3e}"),
            ));
        }
        Ok(Self { entries })
    }

    /// Diagonal unitary `diag(e^{i phi_k})`.
    pub fn diagonal_phases(phases: &[f64]) -> Result<Self> {
        let d = CVector::from_iterator(
            phases.len(),
            phases.iter().map(|&p| Complex64::from_polar(1.0, p)),
        );
        Self::new(CMatrix::from_diagonal(&d))
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

impl QuantumState {
    pub fn layout(&self) -> &SubsystemLayout {
        match self {
            QuantumState::Pure(p) => p.layout(),
            QuantumState::Mixed(m) => m.layout(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            QuantumState::Pure(p) => p.to_density(),
            QuantumState::Mixed(m) => m.clone(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            QuantumState::Pure(_) => "pure",
            QuantumState::Mixed(_) => "density",
        }
    }
}

/// Kronecker composition of two states of the same kind.
pub fn tensor(a: &QuantumState, b: &QuantumState) -> Result<QuantumState> {
    match (a, b) {
        (QuantumState::Pure(x), QuantumState::Pure(y)) => Ok(QuantumState::Pure(x.tensor(y)?)),
        (QuantumState::Mixed(x), QuantumState::Mixed(y)) => Ok(QuantumState::Mixed(x.tensor(y)?)),
        _ => Err(QcorrError::KindMismatch(format!(
            "cannot tensor a {} state with a {} state",
            a.kind(),
            b.kind()
        ))),
    }
}

/// Partial transpose of an arbitrary operator on `layout` over `sub`.
pub fn partial_transpose_matrix(
    m: &CMatrix,
    layout: &SubsystemLayout,
    sub: &str,
) -> Result<CMatrix> {
    if m.nrows() != layout.total_dim() || m.ncols() != layout.total_dim() {
        return Err(QcorrError::Layout(format!(
            "operator is {}x{}, layout needs dimension {}",
            m.nrows(),
            m.ncols(),
            layout.total_dim()
        )));
    }
    Ok(partial_transpose_raw(m, layout, layout.index_of(sub)?))
}

fn partial_transpose_raw(m: &CMatrix, layout: &SubsystemLayout, pos: usize) -> CMatrix {
    let d = m.nrows();
    let stride = layout.stride(pos);
    let local = layout.dims()[pos];
    let digit = |i: usize| (i / stride) % local;
    let mut out = CMatrix::zeros(d, d);
    for i in 0..d {
        let di = digit(i);
        for j in 0..d {
            let dj = digit(j);
            let ii = i - di * stride + dj * stride;
            let jj = j - dj * stride + di * stride;
            out[(ii, jj)] = m[(i, j)];
        }
    }
    out
}

fn checked_keep(layout: &SubsystemLayout, keep: &[&str]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(QcorrError::Layout(
            "keep set must name at least one subsystem".into(),
        ));
    }
    layout.positions(keep)
}

/// For every flat index returns (index within kept subsystems, index within
/// traced subsystems), plus the traced-space dimension.
fn split_indices(layout: &SubsystemLayout, kept: &[usize]) -> (Vec<(usize, usize)>, usize) {
    let traced: Vec<usize> = (0..layout.len()).filter(|p| !kept.contains(p)).collect();
    let dims = layout.dims();
    let traced_dim: usize = traced.iter().map(|&p| dims[p]).product();
    let map = (0..layout.total_dim())
        .map(|i| {
            let digits = layout.digits(i);
            let k = kept.iter().fold(0, |acc, &p| acc * dims[p] + digits[p]);
            let t = traced.iter().fold(0, |acc, &p| acc * dims[p] + digits[p]);
            (k, t)
        })
        .collect();
    (map, traced_dim)
}
