//! Shannon entropy and information fluctuation for discrete memoryless
//! sources: exact measures, closed-form binary curves, plug-in
//! estimation with short-sequence confidence bounds, Huffman coding
//! efficiency, and seeded Monte Carlo / exhaustive verification of the
//! typicality and AEP claims.
//!
//! All logarithms are base 2 and all information quantities are in
//! shannons.

pub mod binary;
pub mod coding;
pub mod error;
pub mod estimate;
pub mod rng;
pub mod sim;
pub mod source;
pub mod stats;

pub use error::{Error, Result};
pub use source::{Distribution, SourceClass};
