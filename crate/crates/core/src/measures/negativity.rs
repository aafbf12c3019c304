use crate::error::Result;
use crate::linalg;
use crate::state::DensityMatrix;

/// Values of magnitude below this are reported as exactly zero.
pub const NEGATIVITY_FLOOR: f64 = 1e-10;

/// Negativity `(||rho^{T_sub}||_1 - 1) / 2`.
pub fn negativity(rho: &DensityMatrix, sub: &str) -> Result<f64> {
    let pt = rho.partial_transpose(sub)?;
    let trace_norm: f64 = linalg::eigvalsh(&pt)?.iter().map(|w| w.abs()).sum();
    let n = 0.5 * (trace_norm - 1.0);
    Ok(if n.abs() < NEGATIVITY_FLOOR { 0.0 } else { n })
}
