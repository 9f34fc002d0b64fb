//! Reproducible random streams.
//!
//! Every sample draws from its own ChaCha8 stream: the generator is seeded
//! with the run seed and the stream number is the sample index. Samples are
//! therefore independent of evaluation order and thread count.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform integer in `0..bound` by rejection, without modulo bias.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: u32) -> u32 {
    assert!(bound > 0, "empty range");
    let zone = u32::MAX - (u32::MAX - bound + 1) % bound;
    loop {
        let x = rng.next_u32();
        if x <= zone {
            return x % bound;
        }
    }
}
