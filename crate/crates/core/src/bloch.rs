//! Bloch decomposition of two-qubit states.
//!
//! Any two-qubit density matrix can be written as
//! `ρ = ¼(I⊗I + a·σ⊗I + I⊗b·σ + Σ_jk T_jk σ_j⊗σ_k)`, with local Bloch vectors
//! `a`, `b` and the spin correlation matrix `T_jk = ⟨σ_j⊗σ_k⟩`.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{self, CMatrix};
use crate::state::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochForm {
    pub a: Vector3<f64>,
    pub b: Vector3<f64>,
    pub t: Matrix3<f64>,
}

/// `tr(ρ · (P ⊗ Q))` without forming the product.
fn expectation(rho: &CMatrix, p: &Matrix2<Complex64>, q: &Matrix2<Complex64>) -> f64 {
    let mut acc = linalg::ZERO;
    for i in 0..4 {
        for j in 0..4 {
            let op = p[(j >> 1, i >> 1)] * q[(j & 1, i & 1)];
            acc += rho[(i, j)] * op;
        }
    }
    acc.re
}

impl BlochForm {
    /// Decomposes a two-qubit state.
    pub fn decompose(rho: &DensityMatrix) -> Result<Self> {
        rho.expect_qubits(2)?;
        let m = rho.matrix();
        let id = Matrix2::identity();
        let a = Vector3::from_fn(|j, _| expectation(m, &linalg::pauli(j), &id));
        let b = Vector3::from_fn(|k, _| expectation(m, &id, &linalg::pauli(k)));
        let t = Matrix3::from_fn(|j, k| expectation(m, &linalg::pauli(j), &linalg::pauli(k)));
        Ok(Self { a, b, t })
    }

    /// The matrix `¼(I⊗I + a·σ⊗I + I⊗b·σ + Σ T_jk σ_j⊗σ_k)`, unvalidated.
    pub fn to_matrix(&self) -> CMatrix {
        let id = CMatrix::identity(2, 2);
        let sigma: Vec<CMatrix> = (0..3).map(|j| linalg::to_dynamic(&linalg::pauli(j))).collect();
        let mut m = CMatrix::identity(4, 4);
        for j in 0..3 {
            m += linalg::kron(&sigma[j], &id) * Complex64::from(self.a[j]);
            m += linalg::kron(&id, &sigma[j]) * Complex64::from(self.b[j]);
            for k in 0..3 {
                m += linalg::kron(&sigma[j], &sigma[k]) * Complex64::from(self.t[(j, k)]);
            }
        }
        m * Complex64::from(0.25)
    }

    /// Rebuilds the density matrix; fails if `(a, b, T)` is not a physical state.
    pub fn reconstruct(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_hermitian(self.to_matrix())
    }

    /// The same state with the roles of Alice and Bob exchanged.
    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, t: self.t.transpose() }
    }

    /// `T Tᵀ`.
    pub fn correlation_gram(&self) -> Matrix3<f64> {
        self.t * self.t.transpose()
    }
}
