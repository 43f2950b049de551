//! Parallel driver for the seeded random code search.

use std::time::Instant;

use leelp_core::codes::{search_chunk, SearchOutcome, SEARCH_CHUNK};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::format::code_to_string;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d_target: u32,
    pub seed: u64,
    pub trials_requested: u64,
    pub trials_used: u64,
    pub rank_deficient: u64,
    pub hit: bool,
    pub hit_trial: Option<u64>,
    pub best_distance: Option<u32>,
    /// Best generator found, in the generator-matrix file format.
    pub best_generator: Option<String>,
    pub elapsed_ms: f64,
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "search q={} n={} k={} d>={} seed={}\n  {}\n  trials used {} of {} ({} rank deficient)\n",
            self.q,
            self.n,
            self.k,
            self.d_target,
            self.seed,
            match self.hit_trial {
                Some(t) => format!("hit on trial {} (index {t})", t + 1),
                None => "no hit".into(),
            },
            self.trials_used,
            self.trials_requested,
            self.rank_deficient
        );
        if let (Some(d), Some(g)) = (self.best_distance, &self.best_generator) {
            out.push_str(&format!("  best distance {d}, generator:\n"));
            for line in g.lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
        out
    }
}

/// Same outcome as the sequential search: chunks run in parallel batches
/// and are merged in chunk order, stopping at the first batch with a hit.
pub fn parallel_search(q: u32, n: usize, k: usize, d_target: u32, trials: u64, seed: u64) -> CliResult<SearchOutcome> {
    if trials == 0 {
        return Err(CliError::Usage("at least one trial is required".into()));
    }
    let chunks = trials.div_ceil(SEARCH_CHUNK);
    let batch = (rayon::current_num_threads() as u64 * 2).max(1);
    let mut done = Vec::new();
    let mut next = 0;
    while next < chunks {
        let end = chunks.min(next + batch);
        let outcomes = (next..end)
            .into_par_iter()
            .map(|c| search_chunk(q, n, k, d_target, seed, c, trials))
            .collect::<Result<Vec<_>, _>>()?;
        let hit = outcomes.iter().any(|o| o.hit_trial.is_some());
        done.extend(outcomes);
        if hit {
            break;
        }
        next = end;
    }
    Ok(SearchOutcome::merge(seed, done))
}

pub fn search(q: u32, n: usize, k: usize, d_target: u32, trials: u64, seed: u64) -> CliResult<SearchReport> {
    let start = Instant::now();
    let out = parallel_search(q, n, k, d_target, trials, seed)?;
    Ok(SearchReport {
        q,
        n,
        k,
        d_target,
        seed,
        trials_requested: trials,
        trials_used: out.trials_used,
        rank_deficient: out.rank_deficient,
        hit: out.hit(),
        hit_trial: out.hit_trial,
        best_distance: out.best.as_ref().map(|_| out.best_distance),
        best_generator: out.best.as_ref().map(code_to_string),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use leelp_core::codes::random_code_search;

    #[test]
    fn matches_sequential() {
        for (q, n, k, d, trials, seed) in [(5, 6, 2, 7, 3000, 4), (7, 5, 2, 99, 1000, 9), (5, 8, 2, 8, 20_000, 1)] {
            assert_eq!(parallel_search(q, n, k, d, trials, seed).unwrap(), random_code_search(q, n, k, d, trials, seed).unwrap());
        }
    }

    #[test]
    fn report_generator_parses() {
        let r = search(5, 8, 2, 8, 20_000, 1).unwrap();
        assert!(r.hit);
        let g = crate::format::parse_generator(r.best_generator.as_ref().unwrap(), "x").unwrap();
        let code = leelp_core::codes::LinearCode::new(g.q, g.n, g.rows).unwrap();
        assert_eq!(code.min_lee_distance().unwrap(), r.best_distance.unwrap());
    }
}
