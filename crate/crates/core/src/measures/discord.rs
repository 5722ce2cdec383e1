//! Geometric and entropic quantum discord.

use nalgebra::Vector3;
use num_complex::Complex64;

use super::{measurement_disturbance, Direction, MeasureKind, MeasureValue, Method, SearchOptions};
use crate::bloch::BlochForm;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::sphere::{self, Goal};
use crate::state::{partial_trace_matrix, DensityMatrix};

/// `¼(|a|² + tr TTᵀ − k_max)` with `k_max` the largest eigenvalue of
/// `aaᵀ + TTᵀ`.
pub fn geometric_discord_closed(rho: &DensityMatrix, direction: Direction) -> Result<MeasureValue> {
    let form = BlochForm::decompose(rho)?;
    let form = match direction {
        Direction::AToB => form,
        Direction::BToA => form.swapped(),
        Direction::Symmetric => {
            return Err(Error::InvalidParameter("geometric discord is directional".into()));
        }
    };
    let gram = form.correlation_gram();
    let k = form.a * form.a.transpose() + gram;
    let (values, vectors) = linalg::symmetric3_eigs(&k);
    let value = 0.25 * (form.a.norm_squared() + gram.trace() - values[0]);
    Ok(MeasureValue::new(MeasureKind::GeomDiscord, value, direction, Method::ClosedForm)
        .with_axis(vectors.column(0).into_owned()))
}

/// `min ‖ρ − Π(ρ)‖²` over every projective measurement axis on `measured_qubit`.
pub fn geometric_discord_oracle(
    rho: &DensityMatrix,
    measured_qubit: usize,
    search: &SearchOptions,
) -> Result<MeasureValue> {
    rho.check_qubit(measured_qubit)?;
    let n = rho.qubits();
    let best = sphere::optimize(
        |axis| linalg::hs_norm_sq(&measurement_disturbance(rho.matrix(), measured_qubit, n, axis)),
        Goal::Minimize,
        search,
    );
    Ok(MeasureValue::new(MeasureKind::GeomDiscord, best.value, Direction::for_measured(measured_qubit), Method::Oracle)
        .with_axis(best.axis))
}

/// Entropic discord with one qubit measured, in bits:
/// `S(ρ_A) − S(ρ) + min_n Σ_± p_± S(ρ_rest|±)`.
///
/// The minimum is searched numerically, so the result bounds the true
/// discord from above.
pub fn quantum_discord(rho: &DensityMatrix, measured_qubit: usize, search: &SearchOptions) -> Result<MeasureValue> {
    rho.check_qubit(measured_qubit)?;
    if rho.qubits() < 2 {
        return Err(Error::QubitCount { expected: 2, got: rho.qubits() });
    }
    let n = rho.qubits();
    let rest: Vec<usize> = (0..n).filter(|&q| q != measured_qubit).collect();
    let m = rho.matrix();

    // Tr_A[(P_± ⊗ I)ρ] = ½(ρ_rest ± Σ_j n_j X_j) with X_j = Tr_A[(σ_j ⊗ I)ρ]
    let reduced_rest = partial_trace_matrix(m, n, &rest);
    let x: Vec<CMatrix> = (0..3)
        .map(|j| {
            let weighted = linalg::left_apply_on_qubit(m, measured_qubit, n, &linalg::pauli(j));
            partial_trace_matrix(&weighted, n, &rest)
        })
        .collect();

    let conditional_entropy = |axis: &Vector3<f64>| {
        let y = &x[0] * Complex64::from(axis[0]) + &x[1] * Complex64::from(axis[1]) + &x[2] * Complex64::from(axis[2]);
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            let branch = (&reduced_rest + &y * Complex64::from(sign)) * Complex64::from(0.5);
            let spectrum = linalg::hermitian_eigenvalues(&branch);
            let p: f64 = spectrum.iter().sum();
            if p <= 0.0 {
                continue;
            }
            // p·S(σ/p) = −Σ λ log₂(λ/p)
            total += spectrum.iter().filter(|&&l| l > 0.0).map(|&l| -l * (l / p).log2()).sum::<f64>();
        }
        total
    };

    let best = sphere::optimize(conditional_entropy, Goal::Minimize, search);
    let s_measured = linalg::von_neumann_entropy(&partial_trace_matrix(m, n, &[measured_qubit]));
    let value = s_measured - rho.entropy() + best.value;
    Ok(MeasureValue::new(MeasureKind::Discord, value, Direction::for_measured(measured_qubit), Method::Oracle)
        .with_axis(best.axis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::binary_entropy;
    use crate::state::PureState;
    use approx::assert_abs_diff_eq;

    fn c(v: f64) -> Complex64 {
        Complex64::from(v)
    }

    fn bell() -> DensityMatrix {
        PureState::from_terms(2, &[(0, c(1.0)), (3, c(1.0))]).unwrap().density()
    }

    fn product() -> DensityMatrix {
        let qa = PureState::from_terms(1, &[(0, c(0.6)), (1, Complex64::new(0.3, 0.8))]).unwrap().density();
        let qa = DensityMatrix::mixture(&[(0.5, &qa), (0.5, &DensityMatrix::maximally_mixed(1))]).unwrap();
        let qb = PureState::from_terms(1, &[(0, c(1.0)), (1, c(-2.0))]).unwrap().density();
        qa.tensor(&qb)
    }

    #[test]
    fn geometric_discord_examples() {
        let search = SearchOptions::default();
        for (rho, expect) in [(bell(), 0.5), (product(), 0.0)] {
            let closed = geometric_discord_closed(&rho, Direction::AToB).unwrap().value;
            let oracle = geometric_discord_oracle(&rho, 0, &search).unwrap().value;
            assert_abs_diff_eq!(closed, expect, epsilon = 1e-14);
            assert_abs_diff_eq!(oracle, expect, epsilon = 1e-10);
        }
    }

    #[test]
    fn geometric_discord_for_bob() {
        let left = DensityMatrix::basis_projector(&[0]).tensor(&DensityMatrix::maximally_mixed(1));
        let rho = DensityMatrix::mixture(&[(0.3, &bell()), (0.7, &left)]).unwrap();
        let search = SearchOptions::default();
        let closed = geometric_discord_closed(&rho, Direction::BToA).unwrap().value;
        let oracle = geometric_discord_oracle(&rho, 1, &search).unwrap().value;
        assert_abs_diff_eq!(closed, oracle, epsilon = 1e-9);
    }

    #[test]
    fn discord_examples() {
        let search = SearchOptions::default();
        assert_abs_diff_eq!(quantum_discord(&bell(), 0, &search).unwrap().value, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(quantum_discord(&product(), 0, &search).unwrap().value, 0.0, epsilon = 1e-9);

        let psi = PureState::from_terms(3, &[(0, c(0.75f64.sqrt())), (7, c(0.5))]).unwrap();
        let d = quantum_discord(&psi.density(), 0, &search).unwrap().value;
        assert_abs_diff_eq!(d, binary_entropy(0.5).unwrap(), epsilon = 1e-9);
    }
}
