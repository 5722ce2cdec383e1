//! Measurement-induced nonlocality in the Hilbert-Schmidt and trace norms.

use nalgebra::Vector3;

use super::{
    local_bloch_vector, measurement_disturbance, Direction, MeasureKind, MeasureValue, Method, SearchOptions, BLOCH_EPS,
};
use crate::bloch::BlochForm;
use crate::error::{Error, Result};
use crate::linalg;
use crate::sphere::{self, Goal};
use crate::state::DensityMatrix;

/// Two-qubit MIN from the Bloch decomposition.
///
/// With `G = T Tᵀ`, the value is `¼(tr G − âᵀ G â)` for a nonzero Bloch
/// vector `a` of the measured party, and `¼(tr G − s₃)` with `s₃` the smallest
/// eigenvalue of `G` when `|a| ≤` [`BLOCH_EPS`].
pub fn min_hs_closed(rho: &DensityMatrix, direction: Direction) -> Result<MeasureValue> {
    let form = BlochForm::decompose(rho)?;
    let form = match direction {
        Direction::AToB => form,
        Direction::BToA => form.swapped(),
        Direction::Symmetric => {
            return Err(Error::InvalidParameter("MIN is directional".into()));
        }
    };
    let gram = form.correlation_gram();
    let total = gram.trace();
    let a_norm = form.a.norm();
    let (value, axis) = if a_norm > BLOCH_EPS {
        let n = form.a / a_norm;
        (0.25 * (total - (n.transpose() * gram * n)[0]), n)
    } else {
        let (s, vectors) = linalg::symmetric3_eigs(&gram);
        (0.25 * (total - s[2]), vectors.column(2).into_owned())
    };
    Ok(MeasureValue::new(MeasureKind::MinHs, value, direction, Method::ClosedForm).with_axis(axis))
}

/// MIN by direct evaluation of `‖ρ − Π(ρ)‖²` over projective measurements on
/// `measured_qubit`. The other side may hold any number of qubits.
///
/// A measured party with a nonzero Bloch vector admits exactly one
/// marginal-preserving measurement, along that vector. Otherwise every axis
/// preserves the marginal and the sphere is searched.
pub fn min_hs_oracle(rho: &DensityMatrix, measured_qubit: usize, search: &SearchOptions) -> Result<MeasureValue> {
    let n = rho.qubits();
    let objective =
        |axis: &Vector3<f64>| linalg::hs_norm_sq(&measurement_disturbance(rho.matrix(), measured_qubit, n, axis));
    let (value, axis) = preserving_optimum(rho, measured_qubit, search, objective)?;
    Ok(MeasureValue::new(MeasureKind::MinHs, value, Direction::for_measured(measured_qubit), Method::Oracle)
        .with_axis(axis))
}

/// Trace-norm MIN: `max ‖ρ − Π(ρ)‖₁` over marginal-preserving measurements.
pub fn min_trace_norm_oracle(
    rho: &DensityMatrix,
    measured_qubit: usize,
    search: &SearchOptions,
) -> Result<MeasureValue> {
    let n = rho.qubits();
    let objective = |axis: &Vector3<f64>| {
        linalg::hermitian_trace_norm(&measurement_disturbance(rho.matrix(), measured_qubit, n, axis))
    };
    let (value, axis) = preserving_optimum(rho, measured_qubit, search, objective)?;
    Ok(MeasureValue::new(MeasureKind::MinTrace, value, Direction::for_measured(measured_qubit), Method::Oracle)
        .with_axis(axis))
}

fn preserving_optimum<F>(
    rho: &DensityMatrix,
    measured_qubit: usize,
    search: &SearchOptions,
    objective: F,
) -> Result<(f64, Vector3<f64>)>
where
    F: Fn(&Vector3<f64>) -> f64,
{
    let a = local_bloch_vector(rho, measured_qubit)?;
    let a_norm = a.norm();
    if a_norm > BLOCH_EPS {
        let axis = a / a_norm;
        return Ok((objective(&axis), axis));
    }
    let best = sphere::optimize(objective, Goal::Maximize, search);
    Ok((best.value, best.axis))
}
