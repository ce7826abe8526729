//! Deterministic random streams for test-function ensembles.
//!
//! The generator is splitmix64 (Steele, Lea, Flood 2014): a 64-bit counter
//! advanced by the golden-ratio increment 0x9E3779B97F4A7C15, whose output is
//! the counter passed through two xor-shift-multiply mixing rounds. Any
//! implementation of splitmix64 in any language reproduces the same stream
//! from the same seed, which is what makes experiment ensembles portable.

/// Splitmix64 stream. Cheap to construct, `Clone` gives an independent replay.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in [0, 1): the top 53 bits scaled by 2^-53.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in [-1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_unit() - 1.0
    }
}
