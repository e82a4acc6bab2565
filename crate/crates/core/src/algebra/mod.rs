//! Multi-matrix algebras, block operators, tracial states and the
//! circulant toolkit.

pub mod block;
pub mod matrix;
pub mod phase;
pub mod state;

pub use block::{BlockOperator, MultiMatrixAlgebra};
pub use matrix::{circulant, cyclic_shift, fourier_matrix, phase_circulant, quasi_circulant, CMatrix};
pub use phase::{epsilon, geometric_phase_sum, Phase};
pub use state::{hs_inner, trace_eval, TraceVector, TracialState};
