//! Multi-threaded census over contiguous index ranges.

use std::thread;

use gapkit_core::census::{exhaustive_budget, sample_range, scan_range, split_range, Distribution};
use gapkit_core::Error;

/// Worker count to use when none is given.
pub fn default_jobs() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

fn run_split(
    k: usize,
    n: usize,
    total: u64,
    jobs: usize,
    scan: impl Fn(u64, u64) -> Result<Distribution, Error> + Sync,
) -> Result<Distribution, Error> {
    let ranges = split_range(total, jobs);
    let scan = &scan;
    let parts: Vec<Result<Distribution, Error>> = thread::scope(|s| {
        let handles: Vec<_> = ranges.iter().map(|&(a, b)| s.spawn(move || scan(a, b))).collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
    });
    let mut dist = Distribution::new(k, n);
    for part in parts {
        dist.merge(&part?);
    }
    Ok(dist)
}

/// Exhaustive census of `P_k^n` split across `jobs` threads.
pub fn census_exhaustive(k: usize, n: usize, jobs: usize, cap: u64) -> Result<Distribution, Error> {
    let total = exhaustive_budget(k, n, cap)?;
    run_split(k, n, total, jobs, |a, b| scan_range(k, n, a, b))
}

/// Seeded sampled census; the result does not depend on `jobs`.
pub fn census_sample(k: usize, n: usize, count: u64, seed: u64, jobs: usize) -> Result<Distribution, Error> {
    run_split(k, n, count, jobs, |a, b| sample_range(k, n, seed, a, b))
}
