//! Validated qubit states and the composition/reduction primitives.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-12;

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotQubitDimension(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// A density matrix over `qubits` qubits: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    data: CMatrix,
}

impl DensityMatrix {
    /// Validates `data` against the Hermitian, trace and positivity tolerances.
    pub fn new(data: CMatrix) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotSquare(data.nrows(), data.ncols()));
        }
        let qubits = qubits_for_dim(data.nrows())?;
        let dev = linalg::hermitian_deviation(&data);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = linalg::trace(&data).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let min = linalg::hermitian_eigenvalues(&data)[0];
        if min < -PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { qubits, data })
    }

    /// Symmetrizes `data` before validating. For matrices that are Hermitian
    /// in exact arithmetic but carry rounding noise.
    pub fn from_hermitian(data: CMatrix) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotSquare(data.nrows(), data.ncols()));
        }
        Self::new(linalg::hermitian_part(&data))
    }

    /// Normalizes a positive matrix by its trace.
    pub fn from_unnormalized(data: CMatrix) -> Result<Self> {
        let tr = linalg::trace(&data).re;
        if tr.is_nan() || tr <= 0.0 {
            return Err(Error::InvalidTrace(tr));
        }
        Self::from_hermitian(data / Complex64::from(tr))
    }

    pub fn maximally_mixed(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        Self { qubits, data: CMatrix::identity(dim, dim) / Complex64::from(dim as f64) }
    }

    /// `|bits⟩⟨bits|` for a computational-basis string such as `[0, 1, 1]`.
    pub fn basis_projector(bits: &[u8]) -> Self {
        DensityMatrix::from(&PureState::basis(bits))
    }

    /// Convex combination `Σ w_i ρ_i`; weights must be non-negative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptyQubitList)?.1;
        let mut acc = CMatrix::zeros(first.dim(), first.dim());
        for (w, rho) in parts {
            if rho.qubits != first.qubits {
                return Err(Error::QubitCount { expected: first.qubits, got: rho.qubits });
            }
            if *w < 0.0 {
                return Err(Error::InvalidParameter(format!("negative mixture weight {w}")));
            }
            acc += &rho.data * Complex64::from(*w);
        }
        Self::from_hermitian(acc)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_matrix(self) -> CMatrix {
        self.data
    }

    pub fn purity(&self) -> f64 {
        linalg::hs_norm_sq(&self.data)
    }

    pub fn entropy(&self) -> f64 {
        linalg::von_neumann_entropy(&self.data)
    }

    pub fn check_qubit(&self, index: usize) -> Result<()> {
        if index >= self.qubits {
            return Err(Error::QubitOutOfRange { index, qubits: self.qubits });
        }
        Ok(())
    }

    pub fn expect_qubits(&self, expected: usize) -> Result<()> {
        if self.qubits != expected {
            return Err(Error::QubitCount { expected, got: self.qubits });
        }
        Ok(())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { qubits: self.qubits + other.qubits, data: linalg::kron(&self.data, &other.data) }
    }

    /// Reduced state on `keep`, in the listed order. Listing the kept qubits
    /// out of order also permutes them.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptyQubitList);
        }
        let mut seen = vec![false; self.qubits];
        for &q in keep {
            self.check_qubit(q)?;
            if seen[q] {
                return Err(Error::DuplicateQubit(q));
            }
            seen[q] = true;
        }
        let out = partial_trace_matrix(&self.data, self.qubits, keep);
        Ok(DensityMatrix { qubits: keep.len(), data: out })
    }

    /// Partial transpose on one qubit. The result is Hermitian with unit
    /// trace but may have negative eigenvalues, so it is returned as a bare
    /// matrix.
    pub fn partial_transpose(&self, qubit: usize) -> Result<CMatrix> {
        self.check_qubit(qubit)?;
        Ok(partial_transpose_matrix(&self.data, qubit, self.qubits))
    }

    /// Partial transpose over every qubit in `qubits`.
    pub fn partial_transpose_many(&self, qubits: &[usize]) -> Result<CMatrix> {
        let mut m = self.data.clone();
        for &q in qubits {
            self.check_qubit(q)?;
            m = partial_transpose_matrix(&m, q, self.qubits);
        }
        Ok(m)
    }
}

/// Partial trace of an arbitrary `2^n × 2^n` matrix, keeping `keep` in order.
/// Indices are assumed distinct and in range.
pub fn partial_trace_matrix(m: &CMatrix, n: usize, keep: &[usize]) -> CMatrix {
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let place = |qubits: &[usize], bits: usize| -> usize {
        qubits.iter().enumerate().fold(0, |idx, (k, &q)| {
            if bits >> (qubits.len() - 1 - k) & 1 == 1 {
                idx | linalg::qubit_mask(q, n)
            } else {
                idx
            }
        })
    };
    let out_dim = 1usize << keep.len();
    let env: Vec<usize> = (0..1usize << traced.len()).map(|e| place(&traced, e)).collect();
    let rows: Vec<usize> = (0..out_dim).map(|r| place(keep, r)).collect();
    CMatrix::from_fn(out_dim, out_dim, |r, c| env.iter().map(|&e| m[(rows[r] | e, rows[c] | e)]).sum())
}

fn partial_transpose_matrix(m: &CMatrix, qubit: usize, n: usize) -> CMatrix {
    let mask = linalg::qubit_mask(qubit, n);
    let dim = m.nrows();
    CMatrix::from_fn(dim, dim, |r, c| {
        // swap the bit of `qubit` between row and column
        let rb = r & mask;
        let cb = c & mask;
        m[((r & !mask) | cb, (c & !mask) | rb)]
    })
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        DensityMatrix { qubits: psi.qubits, data: &psi.amplitudes * psi.amplitudes.adjoint() }
    }
}

/// A normalized state vector over `qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    qubits: usize,
    amplitudes: DVector<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let qubits = qubits_for_dim(amplitudes.len())?;
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(Self { qubits, amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(amplitudes / Complex64::from(norm))
    }

    /// Builds a state from `(basis index, amplitude)` pairs and normalizes it.
    pub fn from_terms(qubits: usize, terms: &[(usize, Complex64)]) -> Result<Self> {
        let mut v = DVector::zeros(1 << qubits);
        for &(idx, amp) in terms {
            if idx >= v.len() {
                return Err(Error::InvalidParameter(format!("basis index {idx} out of range")));
            }
            v[idx] += amp;
        }
        Self::normalized(v)
    }

    pub fn basis(bits: &[u8]) -> Self {
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize);
        let mut v = DVector::zeros(1 << bits.len());
        v[idx] = linalg::ONE;
        Self { qubits: bits.len(), amplitudes: v }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from(self)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState { qubits: self.qubits + other.qubits, amplitudes: self.amplitudes.kronecker(&other.amplitudes) }
    }

    /// Reduced density matrix on `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.density().partial_trace(keep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::from(re)
    }

    fn ghz3() -> PureState {
        PureState::from_terms(3, &[(0b000, c(1.0)), (0b111, c(1.0))]).unwrap()
    }

    fn mixed_ghz3() -> DensityMatrix {
        let p0 = DensityMatrix::basis_projector(&[0, 0, 0]);
        let p1 = DensityMatrix::basis_projector(&[1, 1, 1]);
        DensityMatrix::mixture(&[(0.5, &p0), (0.5, &p1)]).unwrap()
    }

    fn close(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn tensor_of_identities_and_projectors() {
        let half = DensityMatrix::maximally_mixed(1);
        let prod = half.tensor(&half);
        assert_eq!(prod.qubits(), 2);
        assert!(close(prod.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);

        let p0 = DensityMatrix::basis_projector(&[0]);
        let p1 = DensityMatrix::basis_projector(&[1]);
        assert_eq!(p0.tensor(&p1), DensityMatrix::basis_projector(&[0, 1]));
    }

    #[test]
    fn partial_trace_examples() {
        let ab = mixed_ghz3().partial_trace(&[0, 1]).unwrap();
        let p00 = DensityMatrix::basis_projector(&[0, 0]);
        let p11 = DensityMatrix::basis_projector(&[1, 1]);
        let expect = DensityMatrix::mixture(&[(0.5, &p00), (0.5, &p11)]).unwrap();
        assert!(close(ab.matrix(), expect.matrix()) < 1e-15);

        let a = ghz3().reduced(&[0]).unwrap();
        assert!(close(a.matrix(), DensityMatrix::maximally_mixed(1).matrix()) < 1e-15);

        let sat =
            PureState::from_terms(3, &[(0b010, c(1.0)), (0b011, c(1.0)), (0b100, c(1.0)), (0b101, c(1.0))]).unwrap();
        let bell = PureState::from_terms(2, &[(0b01, c(1.0)), (0b10, c(1.0))]).unwrap();
        let ab = sat.reduced(&[0, 1]).unwrap();
        assert!(close(ab.matrix(), bell.density().matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_composes() {
        let psi = PureState::normalized(DVector::from_fn(8, |i, _| {
            Complex64::new((i as f64 + 1.0).sin(), (i as f64 * 0.3).cos())
        }))
        .unwrap();
        let rho = psi.density();
        let direct = rho.partial_trace(&[0]).unwrap();
        let stepwise = rho.partial_trace(&[0, 1]).unwrap().partial_trace(&[0]).unwrap();
        assert!(close(direct.matrix(), stepwise.matrix()) < 1e-12);
    }

    #[test]
    fn partial_trace_can_permute() {
        let rho = DensityMatrix::basis_projector(&[0, 1, 1]);
        let swapped = rho.partial_trace(&[2, 0]).unwrap();
        assert_eq!(swapped, DensityMatrix::basis_projector(&[1, 0]));
    }

    #[test]
    fn partial_trace_errors() {
        let rho = mixed_ghz3();
        assert!(matches!(rho.partial_trace(&[]), Err(Error::EmptyQubitList)));
        assert!(matches!(rho.partial_trace(&[1, 1]), Err(Error::DuplicateQubit(1))));
        assert!(matches!(rho.partial_trace(&[3]), Err(Error::QubitOutOfRange { .. })));
    }

    #[test]
    fn partial_transpose_examples() {
        let bell = PureState::from_terms(2, &[(0, c(1.0)), (3, c(1.0))]).unwrap().density();
        let pt = bell.partial_transpose(0).unwrap();
        let spectrum = linalg::hermitian_eigenvalues(&pt);
        assert_abs_diff_eq!(spectrum[0], -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(linalg::trace(&pt).re, 1.0, epsilon = 1e-15);

        let mixed = DensityMatrix::maximally_mixed(2);
        assert_eq!(&mixed.partial_transpose(1).unwrap(), mixed.matrix());

        let product = PureState::normalized(DVector::from_vec(vec![c(1.0), Complex64::new(0.0, 2.0)]))
            .unwrap()
            .tensor(&PureState::normalized(DVector::from_vec(vec![c(3.0), c(-1.0)])).unwrap())
            .density();
        let pt = product.partial_transpose(0).unwrap();
        assert!(linalg::hermitian_eigenvalues(&pt)[0] > -1e-14);
        assert!(matches!(product.partial_transpose(2), Err(Error::QubitOutOfRange { .. })));
    }

    #[test]
    fn constructor_rejects_invalid_matrices() {
        let mut m = DensityMatrix::maximally_mixed(1).into_matrix();
        m[(0, 1)] = Complex64::new(0.0, 1e-9);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));

        let m = CMatrix::identity(2, 2);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidTrace(_))));

        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.5);
        m[(1, 1)] = c(-0.5);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotPositive(_))));

        assert!(matches!(DensityMatrix::new(CMatrix::identity(3, 3) / c(3.0)), Err(Error::NotQubitDimension(3))));
        assert!(matches!(PureState::new(DVector::from_vec(vec![c(1.0), c(1.0)])), Err(Error::NotNormalized(_))));
    }
}
