//! Random search for linear codes with a target minimum Lee distance.
//!
//! Trials are grouped into chunks of [`SEARCH_CHUNK`]; chunk `c` draws from
//! ChaCha8 stream `c` of the seed. The sequential driver visits chunks in
//! order, so any driver that evaluates chunks independently and keeps the
//! lowest-numbered hit reproduces it exactly.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{rank, LinearCode};
use crate::error::{Error, Result};
use crate::lee::{check_odd_prime, half};

pub const SEARCH_CHUNK: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkOutcome {
    pub chunk: u64,
    /// Best code of the chunk with its distance; earliest trial wins ties.
    pub best: Option<(LinearCode, u32)>,
    pub trials: u64,
    pub rank_deficient: u64,
    /// Trial index (global) at which the target was reached.
    pub hit_trial: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub seed: u64,
    pub best: Option<LinearCode>,
    pub best_distance: u32,
    pub trials_used: u64,
    pub rank_deficient: u64,
    pub hit_trial: Option<u64>,
}

impl SearchOutcome {
    pub fn hit(&self) -> bool {
        self.hit_trial.is_some()
    }

    /// Folds chunk results in chunk order, stopping after the first hit.
    pub fn merge(seed: u64, chunks: impl IntoIterator<Item = ChunkOutcome>) -> SearchOutcome {
        let mut out =
            SearchOutcome { seed, best: None, best_distance: 0, trials_used: 0, rank_deficient: 0, hit_trial: None };
        for c in chunks {
            out.trials_used += c.trials;
            out.rank_deficient += c.rank_deficient;
            if let Some((code, d)) = c.best {
                if out.best.is_none() || d > out.best_distance {
                    out.best = Some(code);
                    out.best_distance = d;
                }
            }
            if c.hit_trial.is_some() {
                out.hit_trial = c.hit_trial;
                break;
            }
        }
        out
    }
}

fn check_params(q: u32, n: usize, k: usize) -> Result<()> {
    check_odd_prime(q)?;
    if n == 0 {
        return Err(Error::EmptyBlock);
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(alloc::format!("dimension k = {k} must lie in 1..={n}")));
    }
    Ok(())
}

/// Runs trials `chunk * SEARCH_CHUNK ..` up to `limit` (exclusive, global
/// trial index), stopping at the first code with distance `>= d_target`.
pub fn search_chunk(q: u32, n: usize, k: usize, d_target: u32, seed: u64, chunk: u64, limit: u64) -> Result<ChunkOutcome> {
    check_params(q, n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let start = chunk * SEARCH_CHUNK;
    let end = limit.min(start + SEARCH_CHUNK);
    let mut out = ChunkOutcome { chunk, best: None, trials: 0, rank_deficient: 0, hit_trial: None };
    let ceiling = n as u32 * half(q) as u32;
    for trial in start..end {
        out.trials += 1;
        let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.random_range(0..q)).collect()).collect();
        if rank(&rows, q) != k {
            out.rank_deficient += 1;
            continue;
        }
        let code = LinearCode { q, n, generator: rows };
        let floor = out.best.as_ref().map_or(0, |(_, d)| *d);
        if let Some(d) = code.min_weight_above(floor)? {
            out.best = Some((code, d));
            if d >= d_target {
                out.hit_trial = Some(trial);
                break;
            }
        }
        if floor >= ceiling {
            break;
        }
    }
    Ok(out)
}

/// Sequential search over `trials` random generator matrices.
pub fn random_code_search(q: u32, n: usize, k: usize, d_target: u32, trials: u64, seed: u64) -> Result<SearchOutcome> {
    check_params(q, n, k)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required".into()));
    }
    let chunks = trials.div_ceil(SEARCH_CHUNK);
    let mut results = Vec::new();
    for c in 0..chunks {
        let outcome = search_chunk(q, n, k, d_target, seed, c, trials)?;
        let hit = outcome.hit_trial.is_some();
        results.push(outcome);
        if hit {
            break;
        }
    }
    Ok(SearchOutcome::merge(seed, results))
}
