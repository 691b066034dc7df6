//! Data-parallel versions of the five test steps.
//!
//! Work is divided by worker rank `k` in `0..P`: round-robin over indices for
//! the Durfee scan and the inequality scan, contiguous chunks of `ceil(n/P)`
//! for the prefix sums and the weights.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{descent_writes, first_violation, inequality_sides, Violation};
use crate::degseq::Degree;
use crate::team::WorkerTeam;

/// Each rank walks `j = k+1, k+1+P, ...` while the predicate holds; the
/// answer is the maximum of the local results.
pub fn corrected_durfee_parallel(sorted: &[Degree], team: &WorkerTeam) -> usize {
    let p = team.workers();
    let n = sorted.len();
    team.map_ranks(|k| {
        let mut local = 0;
        let mut j = k + 1;
        while j <= n && sorted[j - 1] >= (j - 1) as Degree {
            local = j;
            j += p;
        }
        local
    })
    .into_iter()
    .max()
    .unwrap_or(0)
}

fn chunk_len(n: usize, p: usize) -> usize {
    n.div_ceil(p).max(1)
}

/// Chunk sums, an exclusive scan of the `P` partials, then an independent
/// sweep of every chunk. Bit-identical to the sequential scan.
pub fn prefix_sums_parallel(degrees: &[Degree], team: &WorkerTeam) -> Vec<u64> {
    let n = degrees.len();
    let mut h = vec![0u64; n + 1];
    if n == 0 {
        return h;
    }
    let chunk = chunk_len(n, team.workers());
    team.install(|| {
        let partials: Vec<u64> = degrees.par_chunks(chunk).map(|c| c.iter().sum()).collect();
        // P values only; scanned by the calling thread between the two phases.
        let offsets: Vec<u64> = partials
            .iter()
            .scan(0u64, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect();
        h[1..]
            .par_chunks_mut(chunk)
            .zip(degrees.par_chunks(chunk))
            .zip(offsets.par_iter())
            .for_each(|((out, input), &offset)| {
                let mut q = offset;
                for (slot, &d) in out.iter_mut().zip(input) {
                    q += d;
                    *slot = q;
                }
            });
    });
    h
}

/// Weight computation with concurrent writers. Every store is a
/// monotone maximum, so the result does not depend on the interleaving.
pub fn compute_weights_parallel(sorted: &[Degree], team: &WorkerTeam) -> Vec<u64> {
    let n = sorted.len();
    let w: Vec<AtomicU64> = team.install(|| (0..=n).into_par_iter().map(|_| AtomicU64::new(0)).collect());
    if n > 0 {
        let chunk = chunk_len(n, team.workers());
        team.install(|| {
            (1..n + 1)
                .into_par_iter()
                .with_min_len(chunk)
                .for_each(|i| {
                    descent_writes(sorted, i, |j, value| {
                        w[j].fetch_max(value, Ordering::Relaxed);
                    })
                });
            let last = sorted[n - 1].min(n as Degree) as usize;
            (1..=last).into_par_iter().for_each(|j| {
                w[j].store(n as u64, Ordering::Relaxed);
            });
        });
    }
    w.into_iter().map(AtomicU64::into_inner).collect()
}

/// Round-robin inequality scan with a shared early-exit flag. Whichever
/// violation a worker observes first, the result is canonicalized to the
/// smallest violated index.
pub fn check_inequalities_parallel(
    h: &[u64],
    w: &[u64],
    durfee: usize,
    team: &WorkerTeam,
) -> Option<Violation> {
    let p = team.workers();
    let stop = AtomicBool::new(false);
    let observed = AtomicUsize::new(usize::MAX);
    team.for_each_rank(|k| {
        let mut i = k + 1;
        while i <= durfee && !stop.load(Ordering::Relaxed) {
            let (lhs, rhs) = inequality_sides(i, h, w);
            if lhs > rhs {
                observed.fetch_min(i, Ordering::Relaxed);
                stop.store(true, Ordering::Relaxed);
                break;
            }
            i += p;
        }
    });
    match observed.into_inner() {
        usize::MAX => None,
        seen => first_violation(h, w, 1, seen),
    }
}
