//! Seeded randomness with cheap derived substreams.
//!
//! Every randomized operation takes a `u64` seed and is a pure function of
//! (inputs, seed). Independent stages derive their own streams via
//! [`derive_seed`] so that reordering stages never silently changes results.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG for a root seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive a named substream seed. SplitMix64 finalizer over the root seed,
/// a label hash and an index; collisions across labels are not a concern at
/// these scales.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index.wrapping_add(1));
    for &b in label.as_bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3);
    }
    splitmix64(h)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn substreams_differ_and_are_stable() {
        let a = derive_seed(7, "walk", 0);
        let b = derive_seed(7, "walk", 1);
        let c = derive_seed(7, "trial", 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(7, "walk", 0));
    }

    #[test]
    fn rng_is_deterministic() {
        let x: u64 = rng_from_seed(42).gen();
        let y: u64 = rng_from_seed(42).gen();
        assert_eq!(x, y);
    }
}
