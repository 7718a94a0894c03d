//! Seeded randomness.
//!
//! Every stochastic component draws from ChaCha8 seeded from a single `u64`
//! through `SeedableRng::seed_from_u64`. ChaCha8 output is specified
//! independently of platform and word size, so a seed reproduces the same
//! stream everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a sub-run (sweep member, trial block).
pub fn derive(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
