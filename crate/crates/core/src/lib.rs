//! Nonclassical correlations of multi-qubit states.
//!
//! The crate computes bipartite correlation measures for qubit density
//! matrices (Hilbert-Schmidt and trace-norm measurement-induced nonlocality,
//! the Horodecki CHSH parameter, geometric discord, negativity and entropic
//! discord) and checks the monogamy relations these measures obey when one
//! party shares correlations with several others.
//!
//! Every measure with a known closed form also has a brute-force route that
//! searches over local projective measurements directly, so the two can be
//! cross-checked.
//!
//! Qubit ordering is big-endian: qubit 0 is the leftmost tensor factor.

pub mod bloch;
pub mod canonical;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod monogamy;
pub mod sampling;
pub mod sphere;
pub mod state;

pub use bloch::BlochForm;
pub use canonical::CanonicalParams;
pub use error::{Error, Result};
pub use measures::{Direction, MeasureKind, MeasureValue, Method, SearchOptions};
pub use monogamy::{MonogamyReport, Relation};
pub use state::{DensityMatrix, PureState};
