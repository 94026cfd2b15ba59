//! Deterministic pseudo-random numbers.
//!
//! The generator is xoshiro256** (Blackman and Vigna) with its 256-bit state
//! filled from the 64-bit seed by four successive splitmix64 outputs:
//!
//! ```text
//! splitmix64:  z += 0x9E3779B97F4A7C15
//!              z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!              z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!              return z ^ (z >> 31)
//!
//! xoshiro256**: result = rotl(s1 * 5, 7) * 9
//!               t = s1 << 17
//!               s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3
//!               s2 ^= t;  s3 = rotl(s3, 45)
//! ```
//!
//! Uniform doubles take the top 53 bits of each output. The integer stream
//! is identical on every platform.

use serde::{Deserialize, Serialize};

/// Identifier recorded alongside every seed.
pub const ALGORITHM_ID: &str = "xoshiro256starstar-splitmix64";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of an independent child stream identified by `path`
/// (e.g. `[cell, replication]`).
pub fn child_seed(seed: u64, path: &[u64]) -> u64 {
    let mut h = seed;
    for &i in path {
        let mut s = i;
        let mixed = splitmix64(&mut s);
        let mut t = h ^ mixed;
        h = splitmix64(&mut t);
    }
    h
}

/// Seeded generator state. Owned by one execution context at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngState {
    seed: u64,
    s: [u64; 4],
}

/// Serializable description of a stream: enough to recreate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngInfo {
    pub seed: u64,
    pub algorithm_id: String,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Self { seed, s }
    }

    /// Generator for the child stream `path` of `seed`.
    pub fn child(seed: u64, path: &[u64]) -> Self {
        Self::new(child_seed(seed, path))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algorithm_id(&self) -> &'static str {
        ALGORITHM_ID
    }

    pub fn info(&self) -> RngInfo {
        RngInfo {
            seed: self.seed,
            algorithm_id: ALGORITHM_ID.to_string(),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform on [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the open interval (0, 1).
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal by the Marsaglia polar method (one of each pair is used).
    pub fn next_normal(&mut self) -> f64 {
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * (-2.0 * s.ln() / s).sqrt();
            }
        }
    }
}
