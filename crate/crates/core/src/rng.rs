//! The one pseudorandom stream used everywhere a seed appears.
//!
//! Every seeded operation (interleaver sampling, Monte Carlo erasure
//! patterns) draws from ChaCha8 as implemented by `rand_chacha` 0.3, keyed
//! with `ChaCha8Rng::seed_from_u64(seed)` and, where independent
//! sub-streams are needed, selected with `set_stream(stream)`. ChaCha's
//! output is specified bit-for-bit, so the same `(seed, stream)` yields the
//! same words on every platform.
//!
//! Only raw `u64` words are consumed. Bounded integers and Bernoulli draws
//! are derived here rather than through `rand`'s distribution helpers,
//! whose algorithms are not guaranteed stable across releases:
//!
//! * `below(bound)`: Lemire's multiply-shift with rejection, exact uniform.
//! * `unit_f64()`: top 53 bits of one word scaled by 2^-53, in `[0, 1)`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Stream(ChaCha8Rng);

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Independent sub-stream `stream` of the generator keyed by `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Stream(rng)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = (self.next_u64() as u128) * (bound as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    #[inline]
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
