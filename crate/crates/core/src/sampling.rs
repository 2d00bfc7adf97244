//! Deterministic parallel sampling. Attempts are numbered; each attempt's configuration
//! depends only on (seed, tag, n, index), and results are consumed in index order, so
//! the outcome never depends on the number of worker threads.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{BoxGeometry, Config};
use crate::seed::stream_id;

/// Configuration number `index` of an experiment.
pub fn config_for(geometry: BoxGeometry, p: f64, seed: u64, tag: u64, index: u64) -> Result<Config> {
    let stream = stream_id(tag, geometry.half_side() as u64, index);
    Config::sample_stream(geometry, p, seed, stream)
}

/// Where a campaign at one scale draws its configurations from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    /// Half-side of the box.
    pub n: u32,
    /// Accepted samples wanted.
    pub samples: usize,
    pub seed: u64,
    pub p: f64,
    pub tag: u64,
    /// Attempts allowed before giving up on a conditioning event.
    pub budget: usize,
}

impl SampleSpec {
    /// Budget defaults to 100 attempts per wanted sample.
    pub fn new(n: u32, samples: usize, seed: u64, p: f64, tag: u64) -> Self {
        SampleSpec { n, samples, seed, p, tag, budget: samples.saturating_mul(100).max(1000) }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn config(&self, index: u64) -> Result<Config> {
        config_for(BoxGeometry::new(self.n)?, self.p, self.seed, self.tag, index)
    }
}

const CHUNK: u64 = 64;

/// Evaluates `attempt(0), attempt(1), …` until `wanted` of them return `Some`, in parallel
/// chunks, and returns the accepted values in index order with the number of attempts
/// needed (one past the index of the last accepted attempt). Fails once `budget` attempts
/// have been made without collecting enough.
pub fn collect_accepted<T, F>(wanted: usize, budget: usize, attempt: F) -> Result<(Vec<T>, usize)>
where
    T: Send,
    F: Fn(u64) -> Result<Option<T>> + Sync,
{
    let mut accepted = Vec::with_capacity(wanted);
    let mut attempts = 0usize;
    let mut next = 0u64;
    while accepted.len() < wanted {
        if next as usize >= budget {
            return Err(Error::InsufficientConditioning { accepted: accepted.len(), attempts: budget });
        }
        let missing = (wanted - accepted.len()) as u64;
        let size = (2 * missing).clamp(CHUNK, 16 * CHUNK).min(budget as u64 - next);
        let results: Vec<Result<Option<T>>> = (next..next + size).into_par_iter().map(&attempt).collect();
        for (i, r) in results.into_iter().enumerate() {
            if let Some(v) = r? {
                if accepted.len() < wanted {
                    accepted.push(v);
                    attempts = next as usize + i + 1;
                }
            }
        }
        next += size;
    }
    Ok((accepted, attempts))
}

/// Runs `f` on indices `0..count` in parallel, results in index order.
pub fn map_indexed<T, F>(count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    (0..count as u64).into_par_iter().map(&f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_prefix_is_independent_of_thread_count() {
        let f = |i: u64| Ok(((i * 2654435761) % 7 < 3).then_some(i));
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| collect_accepted(500, 10_000, f)).unwrap();
        let b = four.install(|| collect_accepted(500, 10_000, f)).unwrap();
        assert_eq!(a, b);
        // sequential reference
        let seq: Vec<u64> = (0..).filter(|&i| f(i).unwrap().is_some()).take(500).collect();
        assert_eq!(a.0, seq);
        assert_eq!(a.1 as u64, seq[499] + 1);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = collect_accepted(5, 100, |_| Ok(None::<u64>));
        assert_eq!(r, Err(Error::InsufficientConditioning { accepted: 0, attempts: 100 }));
    }
}
