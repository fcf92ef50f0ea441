//! Pinned, portable pseudo-random number generator.
//!
//! Dataset generation must reproduce bit-for-bit across runs, platforms, and
//! reimplementations in other languages, so the generator is specified here
//! by its exact recurrence rather than taken from a library. This is the
//! SplitMix64 generator: 64-bit state, one additive constant, two xor-shift
//! multiplies per output.
//!
//! ```text
//! state <- state + 0x9E3779B97F4A7C15              (mod 2^64)
//! z  <- state
//! z  <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9     (mod 2^64)
//! z  <- (z xor (z >> 27)) * 0x94D049BB133111EB     (mod 2^64)
//! output <- z xor (z >> 31)
//! ```
//!
//! Derived draws are fixed too: `next_below(n)` maps a raw output through the
//! multiply-high reduction `(x * n) >> 64` over 128 bits, and `next_f64`
//! takes the top 53 bits as `(x >> 11) * 2^-53`.

/// SplitMix64 stream seeded directly with a 64-bit seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, n)` via the 128-bit multiply-high reduction.
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "next_below needs n > 0");
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform draw in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// In-place Fisher-Yates shuffle driven by `next_below`.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// Weighted index draw: walk the cumulative weights with one f64 draw.
    pub fn next_weighted(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        let mut r = self.next_f64() * total;
        for (i, &w) in weights.iter().enumerate() {
            r -= w;
            if r < 0.0 {
                return i;
            }
        }
        weights.len() - 1
    }
}
