//! Pure three-qubit states: the five-parameter standard form, the identities
//! that hold across the `A:BC` cut, and the MIN monogamy residual.
//!
//! Every pure three-qubit state is local-unitarily equivalent to
//!
//! ```text
//! λ₀|000⟩ + λ₁e^{iφ}|100⟩ + λ₂|101⟩ + λ₃|110⟩ + λ₄|111⟩,   λ_j ≥ 0, Σλ_j² = 1.
//! ```
//!
//! For such a state the MIN monogamy residual
//! `D_M(A→B) + D_M(A→C) − D_M(A→BC)` has the closed form
//!
//! ```text
//! −(2λ₀²/a²)·[4λ₁²λ₂²λ₃² sin²φ + (λ₄(2λ₂² + 2λ₃² + 2λ₄² − 1) + 2λ₁λ₂λ₃ cos φ)²]
//! ```
//!
//! where `a` is the modulus of Alice's Bloch vector.

use nalgebra::{DVector, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::BlochForm;
use crate::error::{Error, Result};
use crate::linalg;
use crate::measures::{
    geometric_discord_oracle, horodecki, local_bloch_vector, min_hs_closed, min_hs_oracle, negativity, Direction,
    SearchOptions, BLOCH_EPS,
};
use crate::state::PureState;

const PARAM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct CanonicalParams {
    lambda: [f64; 5],
    phi: f64,
}

#[derive(Deserialize)]
struct RawParams {
    lambda: [f64; 5],
    phi: f64,
}

impl TryFrom<RawParams> for CanonicalParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        CanonicalParams::new(raw.lambda, raw.phi)
    }
}

impl CanonicalParams {
    pub fn new(lambda: [f64; 5], phi: f64) -> Result<Self> {
        if let Some(l) = lambda.iter().find(|&&l| l.is_nan() || l < 0.0) {
            return Err(Error::InvalidParameter(format!("negative coefficient {l}")));
        }
        let norm_sq: f64 = lambda.iter().map(|l| l * l).sum();
        if (norm_sq - 1.0).abs() > PARAM_TOL {
            return Err(Error::InvalidParameter(format!("Σλ² = {norm_sq}, expected 1")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&phi) {
            return Err(Error::InvalidParameter(format!("phase {phi} outside [0, π]")));
        }
        Ok(Self { lambda, phi })
    }

    /// Rescales non-negative coefficients to unit norm.
    pub fn normalized(lambda: [f64; 5], phi: f64) -> Result<Self> {
        let norm = lambda.iter().map(|l| l * l).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::InvalidParameter("all coefficients are zero".into()));
        }
        Self::new(lambda.map(|l| l / norm), phi)
    }

    pub fn lambda(&self) -> [f64; 5] {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Alice's Bloch vector, read off the parameters.
    pub fn alice_bloch(&self) -> Vector3<f64> {
        let [l0, l1, ..] = self.lambda;
        let (sin, cos) = self.phi.sin_cos();
        Vector3::new(2.0 * l0 * l1 * cos, 2.0 * l0 * l1 * sin, 2.0 * l0 * l0 - 1.0)
    }
}

pub fn canonical_state(p: &CanonicalParams) -> PureState {
    let [l0, l1, l2, l3, l4] = p.lambda;
    let mut v = DVector::zeros(8);
    v[0b000] = Complex64::from(l0);
    v[0b100] = Complex64::from_polar(l1, p.phi);
    v[0b101] = Complex64::from(l2);
    v[0b110] = Complex64::from(l3);
    v[0b111] = Complex64::from(l4);
    PureState::normalized(v).expect("canonical parameters are normalized")
}

/// Modulus of one party's Bloch vector.
pub fn bloch_modulus(psi: &PureState, party: usize) -> Result<f64> {
    Ok(local_bloch_vector(&psi.density(), party)?.norm())
}

/// The pure state of `party` versus the rest, compressed to two qubits.
///
/// The rest's support is at most two-dimensional, so the state is
/// `Σ_k √p_k |e_k⟩|k⟩` with `ρ_party = Σ_k p_k |e_k⟩⟨e_k|`, which is
/// local-unitarily equivalent to the original across the cut.
pub fn schmidt_two_qubit(psi: &PureState, party: usize) -> Result<PureState> {
    let rho_party = psi.reduced(&[party])?;
    let eig = linalg::hermitian_eigs(rho_party.matrix())?;
    let mut v = DVector::zeros(4);
    for i in 0..2 {
        for k in 0..2 {
            v[2 * i + k] = eig.vectors[(i, k)] * eig.values[k].max(0.0).sqrt();
        }
    }
    PureState::normalized(v)
}

/// Quantities that all equal `1 − a²` for a pure state across `A:BC`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BipartitionIdentity {
    pub n_sq: f64,
    pub two_dg: f64,
    pub two_dm: f64,
    pub m_minus_1: f64,
    pub one_minus_a_sq: f64,
}

impl BipartitionIdentity {
    pub fn values(&self) -> [f64; 5] {
        [self.n_sq, self.two_dg, self.two_dm, self.m_minus_1, self.one_minus_a_sq]
    }

    /// Largest pairwise difference among the five fields.
    pub fn spread(&self) -> f64 {
        let v = self.values();
        let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = v.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

/// Evaluates the `A:BC` identities for a pure state with party A = qubit 0.
/// Negativity is exact; both discord-type terms use the measurement oracles.
pub fn bipartition_identities(psi: &PureState, search: &SearchOptions) -> Result<BipartitionIdentity> {
    if psi.qubits() < 2 {
        return Err(Error::QubitCount { expected: 3, got: psi.qubits() });
    }
    let rho = psi.density();
    let n = negativity(&rho, &[0])?.value;
    let dg = geometric_discord_oracle(&rho, 0, search)?.value;
    let dm = min_hs_oracle(&rho, 0, search)?.value;
    let m = horodecki(&schmidt_two_qubit(psi, 0)?.density())?.value.value;
    let a = bloch_modulus(psi, 0)?;
    Ok(BipartitionIdentity {
        n_sq: n * n,
        two_dg: 2.0 * dg,
        two_dm: 2.0 * dm,
        m_minus_1: m - 1.0,
        one_minus_a_sq: 1.0 - a * a,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRelation {
    pub lhs: f64,
    pub rhs: f64,
}

impl TraceRelation {
    pub fn gap(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// `tr(T_AB T_ABᵀ)` against `1 + 2c² − a² − b²`, and `tr(T_AC T_ACᵀ)`
/// against `1 + 2b² − a² − c²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRelations {
    pub ab: TraceRelation,
    pub ac: TraceRelation,
}

pub fn trace_relations(psi: &PureState) -> Result<TraceRelations> {
    expect_three(psi)?;
    let rho = psi.density();
    let a = local_bloch_vector(&rho, 0)?.norm_squared();
    let b = local_bloch_vector(&rho, 1)?.norm_squared();
    let c = local_bloch_vector(&rho, 2)?.norm_squared();
    let t_ab = BlochForm::decompose(&rho.partial_trace(&[0, 1])?)?.correlation_gram().trace();
    let t_ac = BlochForm::decompose(&rho.partial_trace(&[0, 2])?)?.correlation_gram().trace();
    Ok(TraceRelations {
        ab: TraceRelation { lhs: t_ab, rhs: 1.0 + 2.0 * c - a - b },
        ac: TraceRelation { lhs: t_ac, rhs: 1.0 + 2.0 * b - a - c },
    })
}

/// Closed-form monogamy residual of a standard-form state. Fails with
/// [`Error::DegenerateBloch`] when Alice's marginal is maximally mixed, where
/// the expression is 0/0; use [`monogamy_residual_direct`] there.
pub fn monogamy_residual_closed(p: &CanonicalParams) -> Result<f64> {
    let a_sq = p.alice_bloch().norm_squared();
    if a_sq.sqrt() <= BLOCH_EPS {
        return Err(Error::DegenerateBloch(a_sq.sqrt()));
    }
    let [l0, l1, l2, l3, l4] = p.lambda;
    let (sin, cos) = p.phi.sin_cos();
    let imag = 4.0 * (l1 * l2 * l3 * sin).powi(2);
    let real = l4 * (2.0 * l2 * l2 + 2.0 * l3 * l3 + 2.0 * l4 * l4 - 1.0) + 2.0 * l1 * l2 * l3 * cos;
    Ok(-(2.0 * l0 * l0 / a_sq) * (imag + real * real))
}

/// `D_M(A→B) + D_M(A→C) − ½(1 − a²)` from the two-qubit marginals, for any
/// pure three-qubit state.
pub fn monogamy_residual_direct(psi: &PureState) -> Result<f64> {
    expect_three(psi)?;
    let rho = psi.density();
    let dm_ab = min_hs_closed(&rho.partial_trace(&[0, 1])?, Direction::AToB)?.value;
    let dm_ac = min_hs_closed(&rho.partial_trace(&[0, 2])?, Direction::AToB)?.value;
    let a_sq = local_bloch_vector(&rho, 0)?.norm_squared();
    Ok(dm_ab + dm_ac - 0.5 * (1.0 - a_sq))
}

fn expect_three(psi: &PureState) -> Result<()> {
    if psi.qubits() != 3 {
        return Err(Error::QubitCount { expected: 3, got: psi.qubits() });
    }
    Ok(())
}
