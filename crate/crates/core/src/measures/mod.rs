//! Bipartite correlation measures.
//!
//! Two-qubit measures come in a closed form built on the Bloch decomposition.
//! The `*_oracle` functions instead search local projective measurements on
//! one qubit directly and accept any number of qubits on the other side, which
//! is how the `A → BC` quantities are evaluated.

mod bell;
mod discord;
mod min;
mod negativity;

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::DensityMatrix;

pub use crate::sphere::SphereSearch as SearchOptions;
pub use bell::{chsh_value, horodecki, ChshSettings, Horodecki};
pub use discord::{geometric_discord_closed, geometric_discord_oracle, quantum_discord};
pub use min::{min_hs_closed, min_hs_oracle, min_trace_norm_oracle};
pub use negativity::negativity;

/// Below this Bloch-vector modulus the measured party counts as maximally mixed.
pub const BLOCH_EPS: f64 = 1e-9;

/// Values in `[-CLIP_TOL, 0)` are reported as exactly zero.
pub const CLIP_TOL: f64 = 1e-10;

const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MeasureKind {
    MinHs,
    MinTrace,
    Horodecki,
    GeomDiscord,
    Negativity,
    Discord,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 6] = [
        MeasureKind::MinHs,
        MeasureKind::MinTrace,
        MeasureKind::Horodecki,
        MeasureKind::GeomDiscord,
        MeasureKind::Negativity,
        MeasureKind::Discord,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureKind::MinHs => "MIN_HS",
            MeasureKind::MinTrace => "MIN_TRACE",
            MeasureKind::Horodecki => "HORODECKI",
            MeasureKind::GeomDiscord => "GEOM_DISCORD",
            MeasureKind::Negativity => "NEGATIVITY",
            MeasureKind::Discord => "DISCORD",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown measure {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "A_to_B")]
    AToB,
    #[serde(rename = "B_to_A")]
    BToA,
    #[serde(rename = "symmetric")]
    Symmetric,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::AToB => "A_to_B",
            Direction::BToA => "B_to_A",
            Direction::Symmetric => "symmetric",
        }
    }

    fn for_measured(qubit: usize) -> Self {
        if qubit == 0 {
            Direction::AToB
        } else {
            Direction::BToA
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureValue {
    pub kind: MeasureKind,
    pub value: f64,
    pub direction: Direction,
    pub method: Method,
    /// Optimal measurement axis, when the measure optimizes over one.
    pub axis: Option<Vector3<f64>>,
}

impl MeasureValue {
    fn new(kind: MeasureKind, value: f64, direction: Direction, method: Method) -> Self {
        Self { kind, value: clip(value), direction, method, axis: None }
    }

    fn with_axis(mut self, axis: Vector3<f64>) -> Self {
        self.axis = Some(axis);
        self
    }
}

pub(crate) fn clip(v: f64) -> f64 {
    if (-CLIP_TOL..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

fn check_unit(n: &Vector3<f64>, tol: f64) -> Result<()> {
    let norm = n.norm();
    if (norm - 1.0).abs() > tol {
        return Err(Error::NotUnitVector(norm));
    }
    Ok(())
}

/// `ρ − Π_n(ρ)` with `Π_n` the projective measurement along `n` on `qubit`.
/// Since `Π_n(ρ) = ½(ρ + NρN)` for `N = n·σ`, this is `½(ρ − NρN)`.
pub(crate) fn measurement_disturbance(rho: &CMatrix, qubit: usize, n_qubits: usize, n: &Vector3<f64>) -> CMatrix {
    let flipped = linalg::conjugate_on_qubit(rho, qubit, n_qubits, &linalg::pauli_dot(n));
    (rho - flipped) * num_complex::Complex64::from(0.5)
}

/// Non-selective von Neumann measurement along `n` on one qubit:
/// `Σ_± Π_± ρ Π_±` with `Π_± = (I ± n·σ)/2`.
pub fn apply_local_measurement(rho: &DensityMatrix, measured_qubit: usize, n: &Vector3<f64>) -> Result<DensityMatrix> {
    rho.check_qubit(measured_qubit)?;
    check_unit(n, UNIT_TOL)?;
    let diff = measurement_disturbance(rho.matrix(), measured_qubit, rho.qubits(), n);
    DensityMatrix::from_hermitian(rho.matrix() - diff)
}

/// Bloch vector of a single qubit's marginal.
pub fn local_bloch_vector(rho: &DensityMatrix, qubit: usize) -> Result<Vector3<f64>> {
    rho.check_qubit(qubit)?;
    let m = rho.partial_trace(&[qubit])?.into_matrix();
    Ok(Vector3::new(2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re))
}

/// Binary entropy of the eigenvalues `(1 ± a)/2`, in bits.
pub fn binary_entropy(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidParameter(format!("binary entropy argument {a} outside [0, 1]")));
    }
    Ok(linalg::entropy_of(&[(1.0 - a) / 2.0, (1.0 + a) / 2.0]))
}
