//! Random streams.
//!
//! Every stochastic decision in the crate is expressed as a draw from the unit
//! interval through [`UnitStream`]. Integer picks and ranged draws are derived
//! from unit draws, so a run is fully described by the sequence of unit values
//! it consumed. That is what lets [`RecordedStream`] replay hand-checked
//! sequences and lets two algorithms share one stream draw for draw.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A source of uniform draws on `[0, 1)`.
pub trait UnitStream {
    fn next_unit(&mut self) -> f64;

    /// Uniform draw on `[lower, upper]`.
    fn uniform(&mut self, lower: f64, upper: f64) -> f64 {
        lower + (upper - lower) * self.next_unit()
    }

    /// Uniform index in `0..n`. `n` must be positive.
    fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_unit() * n as f64) as usize).min(n - 1)
    }
}

impl<R: RngCore> UnitStream for R {
    fn next_unit(&mut self) -> f64 {
        self.gen::<f64>()
    }
}

/// Stream id reserved for the search process of a run.
pub const SEARCH_STREAM: u64 = 0;
/// Stream id reserved for objective noise, kept apart so noisy problems never
/// shift the search draws.
pub const NOISE_STREAM: u64 = 1;

/// ChaCha8 generator for `seed` on the given stream id.
pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Replays a fixed sequence of unit draws. Panics when the sequence runs out,
/// which in a hand-checked scenario means the code consumed more draws than
/// the scenario accounts for.
#[derive(Debug, Clone)]
pub struct RecordedStream {
    values: Vec<f64>,
    cursor: usize,
}

impl RecordedStream {
    pub fn new(values: impl Into<Vec<f64>>) -> Self {
        Self {
            values: values.into(),
            cursor: 0,
        }
    }

    pub fn consumed(&self) -> usize {
        self.cursor
    }

    pub fn remaining(&self) -> usize {
        self.values.len() - self.cursor
    }
}

impl UnitStream for RecordedStream {
    fn next_unit(&mut self) -> f64 {
        let value = *self
            .values
            .get(self.cursor)
            .unwrap_or_else(|| panic!("recorded stream exhausted after {} draws", self.cursor));
        self.cursor += 1;
        value
    }
}

/// Always returns zero. Used to silence objective noise.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroStream;

impl UnitStream for ZeroStream {
    fn next_unit(&mut self) -> f64 {
        0.0
    }
}

/// Wraps a stream and counts the draws taken from it.
#[derive(Debug)]
pub struct CountingStream<S> {
    inner: S,
    pub draws: usize,
}

impl<S> CountingStream<S> {
    pub fn new(inner: S) -> Self {
        Self { inner, draws: 0 }
    }
}

impl<S: UnitStream> UnitStream for CountingStream<S> {
    fn next_unit(&mut self) -> f64 {
        self.draws += 1;
        self.inner.next_unit()
    }
}
