//! Deterministic random source.
//!
//! All randomness flows through [`RandomSource`], a ChaCha8 stream cipher
//! generator (`rand_chacha::ChaCha8Rng`) seeded from a 64-bit value. ChaCha8
//! output is platform independent and value-stable across `rand_chacha`
//! releases, so a seed fully determines every draw.
//!
//! Child sources for parallel or independent sub-tasks are derived with
//! [`RandomSource::split`]; the child seed is a SplitMix64 mix of the parent
//! seed and the number of children split so far, so it does not depend on
//! how many values the parent has drawn.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    splits: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            splits: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Seeds from OS entropy. Only used when the caller supplies no seed.
    pub fn from_entropy() -> (Self, u64) {
        let seed = rand::rng().next_u64();
        (Self::new(seed), seed)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives an independent child source.
    pub fn split(&mut self) -> RandomSource {
        self.splits += 1;
        let child = splitmix64(self.seed ^ splitmix64(self.splits));
        RandomSource::new(child)
    }

    /// Derives `count` child sources in order.
    pub fn split_n(&mut self, count: usize) -> Vec<RandomSource> {
        (0..count).map(|_| self.split()).collect()
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform draw in `[low, high]`.
    pub fn uniform_in(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.uniform()
    }

    /// Uniform index in `0..len`. `len` must be positive.
    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        use rand::seq::SliceRandom;
        items.shuffle(&mut self.rng);
    }

    /// Two distinct indices in `0..len` (`len >= 2`).
    pub fn distinct_pair(&mut self, len: usize) -> (usize, usize) {
        let a = self.index(len);
        let mut b = self.index(len - 1);
        if b >= a {
            b += 1;
        }
        (a, b)
    }

    pub fn sample<T, D: rand::distr::Distribution<T>>(&mut self, dist: &D) -> T {
        dist.sample(&mut self.rng)
    }
}
