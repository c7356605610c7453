//! Crate-private helpers for deriving independent ChaCha streams from a
//! master seed. Every concurrent unit (trial, role, branch) owns a private
//! stream keyed through these mixers, so results are bit-identical no
//! matter how work is scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a over arbitrary bytes; stable across platforms.
pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// SplitMix64 finalizer; decorrelates structured counter inputs.
pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// A ChaCha stream addressed by (master seed, domain, index). Streams for
/// distinct (domain, index) pairs are independent.
pub(crate) fn stream(master_seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(splitmix64(domain.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index));
    rng
}
