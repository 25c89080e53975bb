//! The seeded generator behind every sampled run.
//!
//! `Xoshiro256PlusPlus` seeded through SplitMix64 (`seed_from_u64`): a fixed
//! seed always yields the same stream on every platform.

use rand::SeedableRng;
pub use rand_xoshiro::Xoshiro256PlusPlus as SampleRng;

pub fn seeded(seed: u64) -> SampleRng {
    SampleRng::seed_from_u64(seed)
}
