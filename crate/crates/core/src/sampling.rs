//! Reproducible random states.
//!
//! All randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`), seeded with
//! `seed_from_u64(seed)`. Sample `i` of a run reads from ChaCha stream `i`, so
//! any sample can be regenerated on its own and parallel sweeps do not depend
//! on scheduling order.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_state, CanonicalParams};
use crate::error::{Error, Result};
use crate::io::State;
use crate::linalg::CMatrix;
use crate::state::{DensityMatrix, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    HaarPure,
    GinibreMixed,
    CanonicalParams,
    GenGhz,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::HaarPure => "haar_pure",
            Family::GinibreMixed => "ginibre_mixed",
            Family::CanonicalParams => "canonical_params",
            Family::GenGhz => "gen_ghz",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Family::HaarPure, Family::GinibreMixed, Family::CanonicalParams, Family::GenGhz]
            .into_iter()
            .find(|f| f.as_str() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown sample family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub family: Family,
    pub qubit_count: usize,
    /// Ginibre rank; full rank when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub seed: u64,
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub index: usize,
    pub state: State,
    pub params: Option<CanonicalParams>,
}

impl SampleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidParameter("sample count must be at least 1".into()));
        }
        if self.qubit_count == 0 || self.qubit_count > 12 {
            return Err(Error::InvalidParameter(format!("unsupported qubit count {}", self.qubit_count)));
        }
        if let Some(rank) = self.rank {
            let dim = 1usize << self.qubit_count;
            if rank == 0 || rank > dim {
                return Err(Error::InvalidParameter(format!("rank {rank} outside [1, {dim}]")));
            }
        }
        match self.family {
            Family::CanonicalParams if self.qubit_count != 3 => {
                Err(Error::QubitCount { expected: 3, got: self.qubit_count })
            }
            Family::GenGhz if self.qubit_count < 2 => Err(Error::QubitCount { expected: 2, got: self.qubit_count }),
            _ => Ok(()),
        }
    }

    /// Sample `index` of this run.
    pub fn sample(&self, index: usize) -> Result<Sample> {
        self.validate()?;
        let mut rng = stream(self.seed, index as u64);
        let n = self.qubit_count;
        let (state, params) = match self.family {
            Family::HaarPure => (State::Pure(haar_pure_with(&mut rng, n)), None),
            Family::GinibreMixed => {
                let rank = self.rank.unwrap_or(1 << n);
                (State::Density(ginibre_mixed_with(&mut rng, n, rank)?), None)
            }
            Family::CanonicalParams => {
                let p = random_canonical_with(&mut rng);
                (State::Pure(canonical_state(&p)), Some(p))
            }
            Family::GenGhz => {
                let alpha = rng.random::<f64>().sqrt();
                (State::Pure(generalized_ghz(n, alpha)?), None)
            }
        };
        Ok(Sample { index, state, params })
    }
}

/// The generator for sample `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state: a normalized vector of complex Gaussians.
pub fn haar_pure(qubits: usize, seed: u64) -> PureState {
    haar_pure_with(&mut stream(seed, 0), qubits)
}

pub fn haar_pure_with<R: Rng + ?Sized>(rng: &mut R, qubits: usize) -> PureState {
    let dim = 1usize << qubits;
    loop {
        let v = DVector::from_fn(dim, |_, _| complex_gaussian(rng));
        if let Ok(psi) = PureState::normalized(v) {
            return psi;
        }
    }
}

/// `GG†/tr(GG†)` for a `2^n × rank` complex Gaussian matrix `G`.
pub fn ginibre_mixed(qubits: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    ginibre_mixed_with(&mut stream(seed, 0), qubits, rank)
}

pub fn ginibre_mixed_with<R: Rng + ?Sized>(rng: &mut R, qubits: usize, rank: usize) -> Result<DensityMatrix> {
    let dim = 1usize << qubits;
    if rank == 0 || rank > dim {
        return Err(Error::InvalidParameter(format!("rank {rank} outside [1, {dim}]")));
    }
    let g = CMatrix::from_fn(dim, rank, |_, _| complex_gaussian(rng));
    DensityMatrix::from_unnormalized(&g * g.adjoint())
}

/// Standard-form parameters: normalized absolute Gaussians, `φ` uniform in `[0, π]`.
pub fn random_canonical(seed: u64) -> CanonicalParams {
    random_canonical_with(&mut stream(seed, 0))
}

pub fn random_canonical_with<R: Rng + ?Sized>(rng: &mut R) -> CanonicalParams {
    loop {
        let lambda: [f64; 5] = std::array::from_fn(|_| rng.sample::<f64, _>(StandardNormal).abs());
        let phi = rng.random::<f64>() * std::f64::consts::PI;
        if let Ok(p) = CanonicalParams::normalized(lambda, phi) {
            return p;
        }
    }
}

/// `α|0…0⟩ + √(1−α²)|1…1⟩` on `qubits` qubits, `α ∈ (0, 1)`.
pub fn generalized_ghz(qubits: usize, alpha: f64) -> Result<PureState> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("|α| = {alpha} outside (0, 1)")));
    }
    let beta = (1.0 - alpha * alpha).sqrt();
    PureState::from_terms(qubits, &[(0, Complex64::from(alpha)), ((1 << qubits) - 1, Complex64::from(beta))])
}
