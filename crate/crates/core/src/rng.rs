//! Reproducible random substreams.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// ChaCha-backed stream addressed by `(seed, stream_id)`.
///
/// Identical `(seed, stream_id)` pairs reproduce identical draws; distinct
/// stream ids give independent substreams, so parallel workers never share
/// state.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    inner: ChaCha12Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha12Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        Self { seed, stream_id, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A child stream whose id is derived from this stream's id and `index`.
    ///
    /// Children of distinct parents or distinct indices do not collide as
    /// long as `index < 2^20`.
    pub fn substream(&self, index: u64) -> Self {
        debug_assert!(index < (1 << 20));
        let id = self.stream_id.wrapping_mul(1 << 20).wrapping_add(index + 1);
        Self::new(self.seed, id)
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
