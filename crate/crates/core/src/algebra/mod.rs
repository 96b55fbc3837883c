//! Exact coefficient arithmetic and dense univariate/bivariate polynomials.

pub mod bipoly;
pub mod field;
pub(crate) mod ntt;
pub mod pade;
pub mod ring;
pub mod upoly;

pub use bipoly::{resultant_in_second_var, BiPoly};
pub use field::{Field, Fp, PrimeField, RationalField, MERSENNE_61};
pub use ring::{Algebra, Scalars};
pub use pade::{pade_reconstruct, pade_reconstruct_bounds, series_inverse, PadeApproximant};
pub use upoly::{interpolate, is_squarefree, squarefree_part, upoly_xgcd, UPoly};
