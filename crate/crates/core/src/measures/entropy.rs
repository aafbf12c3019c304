use crate::error::{QcorrError, Result};
use crate::state::DensityMatrix;

/// Eigenvalues at or below this contribute nothing to `-p log p`.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

/// Shannon entropy in bits of a spectrum (or probability vector).
pub fn entropy_bits(spectrum: &[f64]) -> f64 {
    let s: f64 = spectrum
        .iter()
        .filter(|&&p| p > ENTROPY_CUTOFF)
        .map(|&p| p * p.log2())
        .sum();
    // avoids returning -0.0 for pure spectra
    0.0 - s
}

/// Binary entropy `h(x)` in bits.
pub fn binary_entropy(x: f64) -> f64 {
    entropy_bits(&[x, 1.0 - x])
}

/// Von Neumann entropy in bits, clamped to `[0, log2 dim]`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s = entropy_bits(&rho.eigenvalues());
    s.clamp(0.0, (rho.dim() as f64).log2())
}

/// Entropy of the marginal on `labels`.
pub fn marginal_entropy(rho: &DensityMatrix, labels: &[&str]) -> Result<f64> {
    Ok(von_neumann_entropy(&rho.partial_trace(labels)?))
}

/// `S(rho) - S(rho_given)`; may be negative.
pub fn conditional_entropy(rho: &DensityMatrix, given: &str) -> Result<f64> {
    if rho.layout().len() < 2 {
        return Err(QcorrError::Layout(
            "conditional entropy needs at least two subsystems".into(),
        ));
    }
    let s_given = marginal_entropy(rho, &[given])?;
    Ok(von_neumann_entropy(rho) - s_given)
}

/// `I(X:Y) = S_X + S_Y - S_XY` on the marginal of the pair.
pub fn mutual_information(rho: &DensityMatrix, pair: (&str, &str)) -> Result<f64> {
    let (x, y) = pair;
    if x == y {
        return Err(QcorrError::InvalidParameter(format!(
            "mutual information needs two distinct subsystems, got `{x}` twice"
        )));
    }
    let xy = rho.partial_trace(&[x, y])?;
    let sx = marginal_entropy(&xy, &[x])?;
    let sy = marginal_entropy(&xy, &[y])?;
    Ok(sx + sy - von_neumann_entropy(&xy))
}
