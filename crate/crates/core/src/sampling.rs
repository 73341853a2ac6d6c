//! Seeded source of "generic" rational data.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ratlinalg::{ratio, Rational};

pub const DEFAULT_SEED: u64 = 20_100_101;

/// Deterministic generator: the same seed always yields the same parameters.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-60i64..=60);
        let d = self.rng.gen_range(1i64..=9);
        ratio(n, d)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if x != ratio(0, 1) {
                return x;
            }
        }
    }

    /// `n` pairwise distinct rationals.
    pub fn distinct_rationals(&mut self, n: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        while out.len() < n {
            let x = self.rational();
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}
