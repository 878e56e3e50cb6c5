//! Resonance poles, survival amplitudes and resonance–antiresonance symmetry
//! breaking for a T-shaped quantum-dot lattice and the Friedrichs model.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod friedrichs;
pub mod lattice;
pub mod numkernel;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
pub use num_complex::Complex64;
