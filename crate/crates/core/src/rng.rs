//! Deterministic random sampling helpers, seeded explicitly everywhere.

use rand_core::{RngCore, SeedableRng};

pub use rand_chacha::ChaCha12Rng;

/// A stream-cipher RNG seeded from a single integer; identical seeds give
/// identical streams on every platform.
pub fn seeded(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Uniform draw from `[0, 1)` using the top 53 bits.
pub fn unit(rng: &mut ChaCha12Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw from `[lo, hi)`.
pub fn uniform(rng: &mut ChaCha12Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit(rng)
}

/// Uniform draw from `{0, 1, ..., n-1}`.
pub fn index(rng: &mut ChaCha12Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}
