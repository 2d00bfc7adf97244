//! Counter-based seeding. Every sample draws from its own ChaCha stream keyed by the
//! master seed and selected by a mix of (experiment tag, scale, sample index), so the
//! bits a sample sees never depend on which worker produced it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Key material for a ChaCha generator derived from a 64-bit seed.
fn key_from_seed(seed: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    let mut s = seed;
    for chunk in key.chunks_exact_mut(8) {
        s = splitmix64(s);
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    key
}

/// Stream identifier for sample `index` of an experiment tagged `tag` at scale `n`.
pub fn stream_id(tag: u64, n: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(tag) ^ n) ^ index)
}

/// Generator for one (seed, stream) pair.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::from_seed(key_from_seed(seed));
    rng.set_stream(stream);
    rng
}

/// Experiment tags; distinct tags keep campaigns from sharing configurations.
pub mod tags {
    pub const CROSSING: u64 = 1;
    pub const PI3: u64 = 2;
    pub const CIRCUITS: u64 = 3;
    pub const INNER_EVENT: u64 = 4;
    pub const SHORTCUTS: u64 = 5;
    pub const SAMPLE: u64 = 6;
    pub const CONDITIONAL: u64 = 7;
}
