//! Deterministic pseudo-random source shared by every generator.
//!
//! The generator is xorshift64* (Vigna, "An experimental exploration of
//! Marsaglia's xorshift generators, scrambled", 2016): a 64-bit xorshift
//! state with shifts (12, 25, 27) followed by multiplication with
//! `0x2545F4914F6CDD1D`. Only integer arithmetic touches the state, and
//! unit reals are built from the top 53 output bits, so sequences agree
//! bit-for-bit on every platform.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Substituted for a zero seed, which is a fixed point of the xorshift step.
pub const ZERO_SEED_REPLACEMENT: u64 = 0x9E37_79B9_7F4A_7C15;

/// Mixed into the seed to derive independent per-stream generators.
pub const STREAM_CONSTANT: u64 = 0xD1B5_4A32_D192_ED03;

const MULTIPLIER: u64 = 0x2545_F491_4F6C_DD1D;
const UNIT_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngState {
    state: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        let state = if seed == 0 { ZERO_SEED_REPLACEMENT } else { seed };
        Self { state }
    }

    /// Independent stream `index` for seed `seed`: `seed ^ (index+1)·STREAM_CONSTANT`.
    pub fn stream(seed: u64, index: u64) -> Self {
        Self::new(seed ^ index.wrapping_add(1).wrapping_mul(STREAM_CONSTANT))
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(MULTIPLIER)
    }

    /// Uniform real in `[0, 1)`: top 53 bits of the next output over 2^53.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * UNIT_SCALE
    }

    /// Uniform integer in the inclusive range `[lo, hi]`, built from one
    /// `next_unit` draw.
    pub fn next_int(&mut self, lo: i64, hi: i64) -> Result<i64> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        let span = (hi as i128 - lo as i128 + 1) as f64;
        let offset = (self.next_unit() * span).floor() as i128;
        let v = lo as i128 + offset;
        Ok(v.min(hi as i128) as i64)
    }

    /// Uniform real in `[lo, hi)`.
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_unit() * (hi - lo)
    }

    /// Index into a slice of length `len`; `len` must be nonzero.
    pub(crate) fn next_index(&mut self, len: usize) -> usize {
        debug_assert!(len > 0);
        let i = (self.next_unit() * len as f64).floor() as usize;
        i.min(len - 1)
    }

    /// Categorical draw against cumulative probabilities.
    pub(crate) fn next_categorical(&mut self, probs: &[f64]) -> usize {
        let u = self.next_unit();
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (i, &p) in probs.iter().enumerate() {
            if p > 0.0 {
                last_positive = i;
                acc += p;
                if u < acc {
                    return i;
                }
            }
        }
        last_positive
    }
}
