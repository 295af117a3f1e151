//! Binary sequences with optimal periodic autocorrelation built from
//! interleaved arrays, plus executable checks of the correlation identities
//! behind them.
//!
//! Layout:
//! - [`sequence`]: packed cyclic bit sequences and their elementary transforms.
//! - [`correlation`]: periodic correlation (definitional oracle and popcount
//!   kernel), the support identity, optimality classes, symmetry.
//! - [`interleave`]: `K x T` arrays, the shift decomposition, Constructions A and B.
//! - [`generators`]: Legendre, m-sequence and twin-prime families.
//! - [`construct_u`]: the period-`4N` construction and its closed-form spectrum.
//! - [`verify`]: prediction-vs-oracle reports and exhaustive search.

pub mod arith;
pub mod construct_u;
pub mod correlation;
pub mod error;
pub mod generators;
pub mod interleave;
pub mod sequence;
pub mod verify;

pub use error::{Error, Result};
pub use sequence::BinarySequence;
