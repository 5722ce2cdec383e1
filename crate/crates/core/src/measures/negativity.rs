use super::{Direction, MeasureKind, MeasureValue, Method};
use crate::error::{Error, Result};
use crate::linalg;
use crate::state::DensityMatrix;

/// `‖ρ^{T_side}‖₁ − 1`, with the partial transpose taken over the qubits in
/// `side`. Normalized so a Bell pair has negativity 1.
pub fn negativity(rho: &DensityMatrix, side: &[usize]) -> Result<MeasureValue> {
    if side.is_empty() {
        return Err(Error::EmptyQubitList);
    }
    let pt = rho.partial_transpose_many(side)?;
    let value = linalg::hermitian_trace_norm(&pt) - 1.0;
    Ok(MeasureValue::new(MeasureKind::Negativity, value, Direction::Symmetric, Method::ClosedForm))
}
