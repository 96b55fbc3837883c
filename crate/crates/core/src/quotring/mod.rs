//! Residue rings `k[U]/<q>` and `k[U,T]/<Q, T^m>`, and matrices over them.

pub mod matrix;
pub mod quot;
pub mod series;

pub use matrix::{matrix_invert, MatrixInvert, RingMatrix};
pub use quot::{QuotRing, ZeroDivisor};
pub use series::{bi_reduce, BiSeries, BiSeriesRing};
