//! Probabilistic polynomials for threshold and symmetric Boolean functions, and
//! their use in exact bichromatic Hamming closest pair and batch Hamming nearest
//! neighbor search.

pub mod cli;
pub mod error;
pub mod hammingpoly;
pub mod neighbors;
pub mod paireval;
pub mod polyalg;
pub mod probpoly;
pub mod reductions;
pub mod rng;
pub mod vectors;

pub use error::{Error, Result};
pub use vectors::{BitVector, Dataset};
