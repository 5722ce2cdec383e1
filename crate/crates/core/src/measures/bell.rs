//! CHSH expectation values and the Horodecki parameter.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::{check_unit, Direction, MeasureKind, MeasureValue, Method};
use crate::bloch::BlochForm;
use crate::error::Result;
use crate::linalg::{self, CMatrix};
use crate::state::DensityMatrix;

const SETTING_TOL: f64 = 1e-10;

/// Measurement directions for Alice (`a1`, `a2`) and Bob (`b1`, `b2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshSettings {
    pub a1: Vector3<f64>,
    pub a2: Vector3<f64>,
    pub b1: Vector3<f64>,
    pub b2: Vector3<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horodecki {
    pub value: MeasureValue,
    /// Settings whose CHSH value is `2√M`.
    pub settings: ChshSettings,
}

/// `tr(Bρ)` for `B = A₁⊗B₁ + A₁⊗B₂ + A₂⊗B₁ − A₂⊗B₂`, `A_i = a_i·σ`, `B_i = b_i·σ`.
pub fn chsh_value(rho: &DensityMatrix, settings: &ChshSettings) -> Result<f64> {
    rho.expect_qubits(2)?;
    for v in [&settings.a1, &settings.a2, &settings.b1, &settings.b2] {
        check_unit(v, SETTING_TOL)?;
    }
    let op = |n: &Vector3<f64>| linalg::to_dynamic(&linalg::pauli_dot(n));
    let (a1, a2) = (op(&settings.a1), op(&settings.a2));
    let (b1, b2) = (op(&settings.b1), op(&settings.b2));
    let bell: CMatrix =
        linalg::kron(&a1, &b1) + linalg::kron(&a1, &b2) + linalg::kron(&a2, &b1) - linalg::kron(&a2, &b2);
    let value = linalg::trace(&(bell * rho.matrix()));
    debug_assert!(value.im.abs() < 1e-10);
    Ok(value.re)
}

/// `M = s₁ + s₂ = tr(TTᵀ) − s₃`, the sum of the two largest eigenvalues of
/// `TTᵀ`, with one set of optimal CHSH settings.
pub fn horodecki(rho: &DensityMatrix) -> Result<Horodecki> {
    let form = BlochForm::decompose(rho)?;
    let gram = form.correlation_gram();
    let (s, _) = linalg::symmetric3_eigs(&gram);
    let m = gram.trace() - s[2];
    let value = MeasureValue::new(MeasureKind::Horodecki, m, Direction::Symmetric, Method::ClosedForm);
    Ok(Horodecki { value, settings: optimal_settings(&form.t) })
}

/// With `T = U Σ Vᵀ`: Alice measures `u₁`, `u₂`; Bob measures
/// `cos θ v₁ ± sin θ v₂` with `tan θ = σ₂/σ₁`, which gives `2√(σ₁² + σ₂²)`.
fn optimal_settings(t: &Matrix3<f64>) -> ChshSettings {
    let svd = t.svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested Vᵀ");
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sigma1 = svd.singular_values[order[0]];
    let sigma2 = svd.singular_values[order[1]];
    let u1 = u.column(order[0]).into_owned();
    let u2 = u.column(order[1]).into_owned();
    let v1 = v_t.row(order[0]).transpose();
    let v2 = v_t.row(order[1]).transpose();
    let theta = sigma2.atan2(sigma1);
    let (sin, cos) = theta.sin_cos();
    ChshSettings { a1: u1, a2: u2, b1: (v1 * cos + v2 * sin).normalize(), b2: (v1 * cos - v2 * sin).normalize() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::SQRT_2;

    fn c(v: f64) -> Complex64 {
        Complex64::from(v)
    }

    fn bell() -> DensityMatrix {
        PureState::from_terms(2, &[(0, c(1.0)), (3, c(1.0))]).unwrap().density()
    }

    fn tsirelson() -> ChshSettings {
        let z = Vector3::z();
        let x = Vector3::x();
        ChshSettings { a1: z, a2: x, b1: (z + x) / SQRT_2, b2: (z - x) / SQRT_2 }
    }

    #[test]
    fn tsirelson_settings_on_bell_state() {
        assert_abs_diff_eq!(chsh_value(&bell(), &tsirelson()).unwrap(), 2.0 * SQRT_2, epsilon = 1e-14);
    }

    #[test]
    fn classical_and_trivial_values() {
        assert_abs_diff_eq!(chsh_value(&DensityMatrix::maximally_mixed(2), &tsirelson()).unwrap(), 0.0);
        let product = DensityMatrix::basis_projector(&[0, 1]);
        let s = tsirelson();
        assert!(chsh_value(&product, &s).unwrap().abs() <= 2.0 + 1e-10);
        let bad = ChshSettings { a1: Vector3::new(1.0, 1.0, 0.0), ..s };
        assert!(chsh_value(&product, &bad).is_err());
    }

    #[test]
    fn horodecki_examples() {
        let h = horodecki(&bell()).unwrap();
        assert_abs_diff_eq!(h.value.value, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(chsh_value(&bell(), &h.settings).unwrap(), 2.0 * SQRT_2, epsilon = 1e-9);

        // two-qubit marginal of α|000⟩ + β|111⟩
        let ggz = PureState::from_terms(3, &[(0, c(0.75f64.sqrt())), (7, c(0.5))]).unwrap();
        let ab = ggz.reduced(&[0, 1]).unwrap();
        assert_abs_diff_eq!(horodecki(&ab).unwrap().value.value, 1.0, epsilon = 1e-14);

        let mixed = DensityMatrix::maximally_mixed(2);
        let h = horodecki(&mixed).unwrap();
        assert_eq!(h.value.value, 0.0);
        assert_abs_diff_eq!(chsh_value(&mixed, &h.settings).unwrap(), 0.0);
    }

    #[test]
    fn optimal_settings_reach_two_root_m() {
        let left = DensityMatrix::basis_projector(&[0, 1]);
        let psi = PureState::from_terms(2, &[(0, c(0.3)), (1, Complex64::new(0.2, 0.5)), (3, c(-0.7))]).unwrap();
        let rho = DensityMatrix::mixture(&[(0.8, &psi.density()), (0.2, &left)]).unwrap();
        let h = horodecki(&rho).unwrap();
        let chsh = chsh_value(&rho, &h.settings).unwrap();
        assert_abs_diff_eq!(chsh * chsh, 4.0 * h.value.value, epsilon = 1e-12);
    }
}
