pub mod classifier;
pub mod cli;
pub mod error;
pub mod format;
pub mod linalg;
pub mod lp;
pub mod operators;
pub mod phase_space;
pub mod polytope;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
