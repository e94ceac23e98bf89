//! Random draws used by the optimizers.
//!
//! Everything stochastic in a run pulls from one [`RandomSource`], one draw
//! at a time, so a run is fully determined by its source. [`RandomStream`] is
//! the seeded generator used in practice; [`ScriptedStream`] replays a fixed
//! list of draws so single iterations can be traced by hand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait RandomSource {
    /// Next uniform draw in `[0, 1)`.
    fn next_unit(&mut self) -> f64;

    /// Seed the source was created from, when it has one.
    fn seed(&self) -> Option<u64> {
        None
    }

    /// Uniform draw in `[lo, hi)`.
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let v = lo + (hi - lo) * self.next_unit();
        if v < hi {
            v
        } else {
            lo
        }
    }

    /// Uniform index in `0..n`. `n` must be positive.
    fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index range must be nonempty");
        ((self.next_unit() * n as f64) as usize).min(n - 1)
    }
}

/// Seeded ChaCha8 stream. Identical seeds give identical sequences on every platform.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RandomSource for RandomStream {
    fn next_unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    fn seed(&self) -> Option<u64> {
        Some(self.seed)
    }
}

/// Replays a fixed sequence of unit draws.
///
/// Panics when a draw is requested past the end of the script, so a hand
/// trace that consumes the wrong number of draws fails loudly.
#[derive(Debug, Clone)]
pub struct ScriptedStream {
    draws: Vec<f64>,
    cursor: usize,
}

impl ScriptedStream {
    pub fn new(draws: impl Into<Vec<f64>>) -> Self {
        let draws = draws.into();
        assert!(
            draws.iter().all(|u| (0.0..1.0).contains(u)),
            "scripted draws must lie in [0, 1)"
        );
        ScriptedStream { draws, cursor: 0 }
    }

    pub fn consumed(&self) -> usize {
        self.cursor
    }

    pub fn remaining(&self) -> usize {
        self.draws.len() - self.cursor
    }
}

impl RandomSource for ScriptedStream {
    fn next_unit(&mut self) -> f64 {
        let u = *self
            .draws
            .get(self.cursor)
            .unwrap_or_else(|| panic!("scripted stream exhausted after {} draws", self.cursor));
        self.cursor += 1;
        u
    }
}
