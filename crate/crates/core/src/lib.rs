//! Exact solver for the isolated regular solutions of composed polynomial
//! systems `f = h(g(X)) = 0`.

pub mod algebra;
pub mod error;
pub mod homotopy;
pub mod lift;
pub mod oracle;
pub mod param;
pub mod parametric;
pub mod quotring;
pub mod slp;
pub mod solver;

pub use algebra::{Field, Fp, PrimeField, RationalField};
pub use error::{Error, Result};
