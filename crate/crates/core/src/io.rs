//! JSON state files.
//!
//! ```json
//! {"qubits": 2, "kind": "pure", "data": [[0.7071067811865476, 0.0], [0.0, 0.0], ...]}
//! ```
//!
//! Pure states list `2^n` amplitudes; density matrices list `4^n` entries in
//! row-major order. Each entry is `[re, im]`. Floats are written in shortest
//! round-trip form, so reading and re-writing a file is byte-stable.

use std::fs;
use std::path::Path;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::state::{DensityMatrix, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Density,
    Pure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub qubits: usize,
    pub kind: StateKind,
    pub data: Vec<[f64; 2]>,
}

/// A state read from disk, keeping track of whether it was given as a vector.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Density(DensityMatrix),
}

impl State {
    pub fn qubits(&self) -> usize {
        match self {
            State::Pure(psi) => psi.qubits(),
            State::Density(rho) => rho.qubits(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            State::Pure(psi) => psi.density(),
            State::Density(rho) => rho.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&PureState> {
        match self {
            State::Pure(psi) => Some(psi),
            State::Density(_) => None,
        }
    }
}

impl From<PureState> for State {
    fn from(psi: PureState) -> Self {
        State::Pure(psi)
    }
}

impl From<DensityMatrix> for State {
    fn from(rho: DensityMatrix) -> Self {
        State::Density(rho)
    }
}

impl StateFile {
    pub fn from_state(state: &State) -> Self {
        let pair = |z: &Complex64| [z.re, z.im];
        match state {
            State::Pure(psi) => StateFile {
                qubits: psi.qubits(),
                kind: StateKind::Pure,
                data: psi.amplitudes().iter().map(pair).collect(),
            },
            State::Density(rho) => {
                let m = rho.matrix();
                let dim = rho.dim();
                StateFile {
                    qubits: rho.qubits(),
                    kind: StateKind::Density,
                    data: (0..dim * dim).map(|k| pair(&m[(k / dim, k % dim)])).collect(),
                }
            }
        }
    }

    pub fn into_state(self) -> Result<State> {
        if self.qubits == 0 || self.qubits > 16 {
            return Err(Error::Format(format!("unsupported qubit count {}", self.qubits)));
        }
        let dim = 1usize << self.qubits;
        let values = self.data.iter().map(|&[re, im]| Complex64::new(re, im));
        match self.kind {
            StateKind::Pure => {
                if self.data.len() != dim {
                    return Err(Error::Format(format!("expected {dim} amplitudes, got {}", self.data.len())));
                }
                Ok(State::Pure(PureState::new(DVector::from_iterator(dim, values))?))
            }
            StateKind::Density => {
                if self.data.len() != dim * dim {
                    return Err(Error::Format(format!("expected {} entries, got {}", dim * dim, self.data.len())));
                }
                Ok(State::Density(DensityMatrix::new(CMatrix::from_row_iterator(dim, dim, values))?))
            }
        }
    }
}

pub fn parse_state(text: &str) -> Result<State> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.into_state()
}

pub fn state_to_json(state: &State) -> String {
    serde_json::to_string(&StateFile::from_state(state)).expect("state file serializes")
}

pub fn read_state(path: impl AsRef<Path>) -> Result<State> {
    parse_state(&fs::read_to_string(path)?)
}

pub fn write_state(path: impl AsRef<Path>, state: &State) -> Result<()> {
    fs::write(path, state_to_json(state))?;
    Ok(())
}
