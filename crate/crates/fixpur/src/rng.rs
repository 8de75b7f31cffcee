//! Reproducible random streams.
//!
//! A stream is identified by a `(seed, stream_id)` pair. Each pair selects an
//! independent ChaCha20 keystream, so parallel workers that own distinct
//! stream ids produce reproducible, non-overlapping draws.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

/// A deterministic random stream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    inner: ChaCha20Rng,
}

impl RngStream {
    /// Creates the stream `(seed, stream_id)` positioned at its first draw.
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            inner,
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The stream id this stream was created from.
    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A uniform deviate in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// A uniform deviate in the open interval `(0, 1)`.
    pub fn uniform_open(&mut self) -> f64 {
        loop {
            let u = self.uniform();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// A standard normal deviate.
    pub fn normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// A uniform integer in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// Direct access to the underlying generator.
    pub fn raw(&mut self) -> &mut impl RngCore {
        &mut self.inner
    }
}
