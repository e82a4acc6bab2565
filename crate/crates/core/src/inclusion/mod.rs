//! Inclusion data with its canonical embedding and the necessary
//! spectral and trace conditions.

pub mod embedding;
pub mod spec;
pub mod spectral;

pub use embedding::{embed, minimal_central_projections, CopyBlock, Embedding, Label};
pub use spec::InclusionSpec;
pub use spectral::{
    check_spectral_condition, default_state, entropy_value, markov_trace, norm_squared, spectral_multiplier,
    SpectralReport,
};

/// `validate_spec`: checks an inclusion and returns its canonical embedding.
pub fn validate_spec(spec: &InclusionSpec) -> crate::error::Result<Embedding> {
    spec.validate()
}
