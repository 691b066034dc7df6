//! Seeded randomness.
//!
//! A 64-bit seed fully determines every random choice. The seed is expanded
//! with `ChaCha8Rng::seed_from_u64`, and each consumer reads its own ChaCha
//! stream, selected with `set_stream`:
//!
//! | stream | consumer              |
//! |--------|-----------------------|
//! | 0      | graph generation      |
//! | 1      | edge swapping         |
//! | 2      | sequence synthesis    |
//!
//! Because streams are disjoint, running `generate` and `swap` with the same
//! `--seed` does not correlate their choices.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Generate = 0,
    Swap = 1,
    Synth = 2,
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// Maps one raw 64-bit draw onto `0..bound` by widening multiplication.
/// The bias is below `bound / 2^64`.
pub fn draw_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    ((rng.next_u64() as u128 * bound as u128) >> 64) as u64
}
