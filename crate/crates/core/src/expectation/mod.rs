//! Conditional expectations onto canonically embedded sub-algebras.

mod channel;
mod conditional;
mod projection;
mod weights;

pub use channel::{mixed_unitary_channel, MixedUnitaryDecomposition};
pub use conditional::{
    average_e2, conditional_expectation, pinch_e1, ConditionalExpectation, Expectation, PINCH_TOLERANCE,
};
pub use projection::{projection_expectation, ProjectionExpectation, GRAM_CONDITION_LIMIT};
pub use weights::ExpectationWeights;
