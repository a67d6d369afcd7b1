//! Reproducible randomness for the Las Vegas subroutines.
//!
//! A single 64-bit seed is installed per thread. Each randomized call derives
//! its own stream from the seed and a caller-supplied tag (typically the input
//! polynomial), so results do not depend on call order.

use std::cell::Cell;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

thread_local! {
    static SEED: Cell<u64> = const { Cell::new(0) };
}

pub fn set_seed(seed: u64) {
    SEED.with(|s| s.set(seed));
}

pub fn seed() -> u64 {
    SEED.with(|s| s.get())
}

pub fn stream<T: Hash + ?Sized>(tag: &T) -> ChaCha8Rng {
    // DefaultHasher::new() uses fixed keys, so this is stable across runs.
    let mut h = DefaultHasher::new();
    seed().hash(&mut h);
    tag.hash(&mut h);
    ChaCha8Rng::seed_from_u64(h.finish())
}
