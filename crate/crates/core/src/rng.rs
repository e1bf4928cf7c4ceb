//! Seeded random streams.
//!
//! Every randomized routine in the crate draws from a [`ChaCha8Rng`]. Independent
//! sub-streams are derived from a `(seed, stream)` pair, so parallel work can be
//! scheduled in any order without changing results.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

/// A generator seeded from a 64-bit seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sub-stream `stream` of `seed`.
pub fn split(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
