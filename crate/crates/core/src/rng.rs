//! Seeded random streams.
//!
//! Every sample is reproducible from a 64-bit seed. Parallel batches take a
//! master seed plus a stream index, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type PolymerRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> PolymerRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from `seed`.
pub fn stream(seed: u64, stream: u64) -> PolymerRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
