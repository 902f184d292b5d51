//! Exact combinatorics of parabolic and Borel subalgebras of the periplectic
//! Lie superalgebra `pe(n)`, together with the weight-level maps of Ringel
//! duality, projective-injective classifiers for the classical families, a
//! truncated formal-character engine and brute-force verification oracles.

pub mod characters;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod periplectic;
pub mod piclass;
pub mod weights;

pub use error::{Error, Result};
