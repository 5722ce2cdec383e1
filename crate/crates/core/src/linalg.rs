//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, Matrix2, Matrix3, SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Hermiticity tolerance accepted by [`hermitian_eigs`].
pub const EIG_HERMITIAN_TOL: f64 = 1e-10;

/// Pauli matrices σ₁ = X, σ₂ = Y, σ₃ = Z.
pub fn pauli(j: usize) -> Matrix2<Complex64> {
    match j {
        0 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        1 => Matrix2::new(ZERO, -I, I, ZERO),
        2 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {j} out of range"),
    }
}

/// `n·σ` for a real 3-vector `n`.
pub fn pauli_dot(n: &Vector3<f64>) -> Matrix2<Complex64> {
    (0..3).fold(Matrix2::zeros(), |acc, j| acc + pauli(j) * Complex64::from(n[j]))
}

pub fn to_dynamic(m: &Matrix2<Complex64>) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| m[(i, j)])
}

pub fn kron(x: &CMatrix, y: &CMatrix) -> CMatrix {
    x.kronecker(y)
}

/// Largest entrywise deviation `max |X − X†|`.
pub fn hermitian_deviation(x: &CMatrix) -> f64 {
    let n = x.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((x[(i, j)] - x[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(X + X†)/2`.
pub fn hermitian_part(x: &CMatrix) -> CMatrix {
    (x + x.adjoint()) * Complex64::from(0.5)
}

pub fn trace(x: &CMatrix) -> Complex64 {
    x.diagonal().iter().sum()
}

/// Squared Hilbert-Schmidt norm `tr(X†X) = Σ|X_ij|²`.
pub fn hs_norm_sq(x: &CMatrix) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// Trace norm: the sum of singular values.
pub fn trace_norm(x: &CMatrix) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    x.clone().svd(false, false).singular_values.sum()
}

/// Trace norm of a Hermitian matrix, `Σ|λ_i|`.
pub fn hermitian_trace_norm(x: &CMatrix) -> f64 {
    hermitian_eigenvalues(x).iter().map(|v| v.abs()).sum()
}

#[derive(Debug, Clone)]
pub struct Eigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: CMatrix,
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
pub fn hermitian_eigs(x: &CMatrix) -> Result<Eigen> {
    if x.nrows() != x.ncols() {
        return Err(Error::NotSquare(x.nrows(), x.ncols()));
    }
    let dev = hermitian_deviation(x);
    if dev > EIG_HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let eig = SymmetricEigen::new(hermitian_part(x));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(x.nrows(), x.ncols(), |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

/// Eigenvalues only, ascending. The input is assumed Hermitian and is not
/// checked; 1×1 and 2×2 use the closed form.
pub fn hermitian_eigenvalues(x: &CMatrix) -> Vec<f64> {
    match x.nrows() {
        0 => Vec::new(),
        1 => vec![x[(0, 0)].re],
        2 => {
            let a = x[(0, 0)].re;
            let d = x[(1, 1)].re;
            let b = x[(0, 1)];
            let mean = 0.5 * (a + d);
            let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
            vec![mean - half_gap, mean + half_gap]
        }
        _ => {
            let mut v: Vec<f64> = hermitian_part(x).symmetric_eigenvalues().iter().copied().collect();
            v.sort_by(f64::total_cmp);
            v
        }
    }
}

/// Eigenvalues of a real symmetric 3×3 matrix in descending order, with
/// matching unit eigenvectors as columns.
pub fn symmetric3_eigs(m: &Matrix3<f64>) -> ([f64; 3], Matrix3<f64>) {
    let eig = SymmetricEigen::new(*m);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = [eig.eigenvalues[order[0]], eig.eigenvalues[order[1]], eig.eigenvalues[order[2]]];
    let vectors = Matrix3::from_columns(&[
        eig.eigenvectors.column(order[0]).into_owned(),
        eig.eigenvectors.column(order[1]).into_owned(),
        eig.eigenvectors.column(order[2]).into_owned(),
    ]);
    (values, vectors)
}

/// Von Neumann entropy in bits, from a Hermitian matrix's spectrum.
/// Eigenvalues at or below zero contribute nothing.
pub fn von_neumann_entropy(x: &CMatrix) -> f64 {
    entropy_of(&hermitian_eigenvalues(x))
}

pub fn entropy_of(spectrum: &[f64]) -> f64 {
    spectrum.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

/// Bit mask of `qubit` inside an index of an `n`-qubit register (big-endian).
#[inline]
pub fn qubit_mask(qubit: usize, n: usize) -> usize {
    1 << (n - 1 - qubit)
}

/// `O_q · X · O_q†` where `O_q` acts as `op` on `qubit` and as the identity
/// elsewhere.
pub fn conjugate_on_qubit(x: &CMatrix, qubit: usize, n: usize, op: &Matrix2<Complex64>) -> CMatrix {
    let left = left_apply_on_qubit(x, qubit, n, op);
    let mut out = left.clone();
    let mask = qubit_mask(qubit, n);
    let dim = x.nrows();
    // right multiplication by op† mixes column pairs
    for c0 in (0..dim).filter(|c| c & mask == 0) {
        let c1 = c0 | mask;
        for r in 0..dim {
            let x0 = left[(r, c0)];
            let x1 = left[(r, c1)];
            out[(r, c0)] = x0 * op[(0, 0)].conj() + x1 * op[(0, 1)].conj();
            out[(r, c1)] = x0 * op[(1, 0)].conj() + x1 * op[(1, 1)].conj();
        }
    }
    out
}

/// `O_q · X` for a single-qubit operator on `qubit`.
pub fn left_apply_on_qubit(x: &CMatrix, qubit: usize, n: usize, op: &Matrix2<Complex64>) -> CMatrix {
    let mask = qubit_mask(qubit, n);
    let dim = x.nrows();
    let mut out = x.clone();
    for r0 in (0..dim).filter(|r| r & mask == 0) {
        let r1 = r0 | mask;
        for c in 0..x.ncols() {
            let x0 = x[(r0, c)];
            let x1 = x[(r1, c)];
            out[(r0, c)] = op[(0, 0)] * x0 + op[(0, 1)] * x1;
            out[(r1, c)] = op[(1, 0)] * x0 + op[(1, 1)] * x1;
        }
    }
    out
}
