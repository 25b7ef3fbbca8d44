//! Deterministic seed derivation.
//!
//! Every randomized component draws from the single run seed through a
//! named substream, so individual stages can be reproduced in isolation.

/// Derive a substream seed from the run seed and a stream name.
///
/// Uses FNV-1a over the name folded into the seed; stable across
/// platforms and releases.
pub fn substream_seed(run_seed: u64, name: &str) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut hash = FNV_OFFSET ^ run_seed.rotate_left(17);
    for byte in name.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}
