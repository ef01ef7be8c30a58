//! Counter-based randomness.
//!
//! Every random draw is addressed by `(seed, stream, index)`: the seed and the
//! stream form the ChaCha key, the index selects the ChaCha nonce. Two
//! components that agree on these three values observe the same bits no
//! matter in which order, or on which thread, they draw.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Stream ids reserved by the constructions of this crate.
pub mod streams {
    /// Exponential radii of the multiplicative spanner.
    pub const RADII: u64 = 0x5241_4449_0000_0000;
    /// Cluster sampling of the near-additive phases.
    pub const CLUSTER_SAMPLING: u64 = 0x5341_4d50_0000_0000;
    /// Random graph generators.
    pub const GENERATOR: u64 = 0x4745_4e45_0000_0000;
    /// Monte Carlo experiments.
    pub const MONTE_CARLO: u64 = 0x4d43_4d43_0000_0000;
    /// Seeds of independent trials.
    pub const TRIALS: u64 = 0x5452_4941_0000_0000;
}

/// A keyed family of independent random generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substream {
    pub seed: u64,
    pub stream: u64,
}

impl Substream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Generator for position `index` of this stream.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(index);
        rng
    }

    /// A single 64-bit word at position `index`.
    pub fn word(&self, index: u64) -> u64 {
        self.rng(index).next_u64()
    }

    /// A uniform draw on `(0, 1]` at position `index`.
    pub fn unit_open_closed(&self, index: u64) -> f64 {
        unit_open_closed(self.word(index))
    }

    /// A uniform draw on `[0, 1)` at position `index`.
    pub fn unit_closed_open(&self, index: u64) -> f64 {
        unit_closed_open(self.word(index))
    }
}

/// Maps 64 random bits to a uniform double on `(0, 1]`.
#[inline]
pub fn unit_open_closed(bits: u64) -> f64 {
    ((bits >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Maps 64 random bits to a uniform double on `[0, 1)`.
#[inline]
pub fn unit_closed_open(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// SplitMix64 finalizer, used to derive child seeds.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `index`-th child of `seed`. Child 0 is `seed` itself.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    if index == 0 {
        seed
    } else {
        mix64(seed ^ mix64(index))
    }
}

/// A sequential generator for bulk Monte Carlo work.
pub fn sequential(seed: u64, stream: u64) -> ChaCha8Rng {
    Substream::new(seed, stream).rng(0)
}
