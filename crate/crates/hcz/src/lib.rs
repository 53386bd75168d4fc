//! Exact computations with integral Harish-Chandra modules for GL(2) and
//! GL(N): Gamma-factor intertwining operators, Kostant combinatorics and
//! the rational constant of the factorized intertwiner at z = 0.

pub mod arith;
pub mod error;
pub mod factor;
pub mod gl2;
pub mod numeric;
pub mod spectral;
pub mod verify;
pub mod weyl;

pub use error::{HczError, Result};
