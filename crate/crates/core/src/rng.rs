//! Per-run random streams.
//!
//! Every run owns a ChaCha8 stream whose seed is a SplitMix64 hash of the
//! master seed, the population size and the run index. Nothing is shared
//! between runs, so sweep output does not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used by every run and comparator in the crate.
pub type RunRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for run `run_id` of the cell with population size `k`.
pub fn derive_seed(master_seed: u64, k: f64, run_id: u32) -> u64 {
    let mut h = mix64(master_seed);
    h = mix64(h ^ k.to_bits());
    mix64(h ^ u64::from(run_id))
}

pub fn stream(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}
