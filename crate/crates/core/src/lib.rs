//! Unitary orthonormal bases for inclusions of finite-dimensional
//! multi-matrix algebras `B = ⊕ M_{m_j} ⊆ A = ⊕ M_{n_i}`.
//!
//! An inclusion is given by its matrix `A` and dimension vectors with
//! `A m̃ = ñ` ([`InclusionSpec`]). The crate decides the spectral condition
//! `Aᵗñ = d m̃`, builds the trace-preserving conditional expectation, the
//! known basis constructions and the basic construction, and verifies every
//! defining identity numerically.

pub mod algebra;
pub mod basis;
pub mod catalog;
pub mod error;
pub mod expectation;
pub mod inclusion;
pub mod io;
pub mod jones;
pub mod random;
pub mod verify;

pub use algebra::{BlockOperator, CMatrix, MultiMatrixAlgebra, Phase, TraceVector, TracialState};
pub use basis::{construct, Method, Provenance, Side, UnitaryBasis};
pub use error::{Error, Result};
pub use expectation::{ConditionalExpectation, Expectation};
pub use inclusion::{check_spectral_condition, Embedding, InclusionSpec, SpectralReport};
pub use io::{BasisDocument, SpecDocument};
pub use jones::{BasicConstruction, DualExpectation};
pub use verify::{Tolerances, VerificationReport};
