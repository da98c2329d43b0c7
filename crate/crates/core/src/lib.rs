//! Convolutional codes over finite fields: state-space realizations,
//! weight adjacency matrices, and equivalence tests.

pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod polymat;
pub mod realization;
pub mod sample;
pub mod text;
pub mod wam;

pub use error::{Error, Result};
