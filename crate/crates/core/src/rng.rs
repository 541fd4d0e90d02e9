//! Seeded randomness shared by every stochastic step.

use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic generator: identical seeds produce identical draw sequences
/// on every platform.
#[derive(Debug, Clone)]
pub struct Prng(ChaCha8Rng);

impl Prng {
    pub fn seed_from_u64(seed: u64) -> Self {
        Prng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Splits off an independent child generator, advancing `self` by one draw.
    pub fn child(&mut self) -> Self {
        Prng::seed_from_u64(self.0.next_u64())
    }

    /// Uniform draw from [0, 1).
    pub fn unit(&mut self) -> f64 {
        self.0.gen::<f64>()
    }

    /// Uniform draw from [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform draw from 0..n.
    pub fn index(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    /// Bernoulli draw with success probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            items.swap(i, self.index(i + 1));
        }
    }
}

/// Stable per-cell seed: FNV-1a over the master seed, textual parts and run
/// index. Hand-rolled so seeds never depend on `std`'s unspecified hasher.
pub fn derive_seed(master: u64, parts: &[&str], run: u64) -> u64 {
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let eat = |h: u64, byte: u8| (h ^ u64::from(byte)).wrapping_mul(PRIME);
    for b in master.to_le_bytes() {
        h = eat(h, b);
    }
    for part in parts {
        for &b in part.as_bytes() {
            h = eat(h, b);
        }
        // separator so ("ab","c") and ("a","bc") hash differently
        h = eat(h, 0x1f);
    }
    for b in run.to_le_bytes() {
        h = eat(h, b);
    }
    h
}
