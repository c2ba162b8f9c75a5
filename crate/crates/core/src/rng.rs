//! Deterministic random streams.
//!
//! Every stochastic routine draws from a stream identified by
//! `(master seed, purpose tag, replica index)`. The generator is ChaCha8, a
//! counter-based cipher: the purpose tag and seed select the key and the
//! replica index selects the stream, so replicas can be run on any number
//! of worker threads and still produce identical numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(tag: &str) -> u64 {
    tag.bytes()
        .fold(FNV_OFFSET, |h, b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Opens the stream for `(seed, purpose, replica)`.
pub fn stream(seed: u64, purpose: &str, replica: u64) -> StreamRng {
    let key = splitmix64(seed ^ splitmix64(fnv1a(purpose)));
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(replica);
    rng
}

/// Derives a child seed, for routines that take a plain `u64` seed.
pub fn derive_seed(seed: u64, purpose: &str, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a(purpose)) ^ splitmix64(index.wrapping_add(1)))
}
