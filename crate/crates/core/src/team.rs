//! A fixed-size team of worker threads.
//!
//! Every parallel operation in the crate runs inside a team so that the
//! worker count given on the command line caps all fan-out.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TeamError {
    #[error("worker count must be at least 1")]
    ZeroWorkers,
    #[error("failed to start worker threads: {0}")]
    Spawn(#[from] rayon::ThreadPoolBuildError),
}

pub struct WorkerTeam {
    pool: ThreadPool,
    workers: usize,
}

impl WorkerTeam {
    pub fn new(workers: usize) -> Result<Self, TeamError> {
        if workers == 0 {
            return Err(TeamError::ZeroWorkers);
        }
        let pool = ThreadPoolBuilder::new()
            .num_threads(workers)
            .thread_name(|i| format!("degseq-worker-{i}"))
            .build()?;
        Ok(Self { pool, workers })
    }

    /// A team sized to the machine's available parallelism.
    pub fn with_available_parallelism() -> Result<Self, TeamError> {
        Self::new(default_workers())
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Runs `f` with the team's pool as the ambient rayon pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    /// Runs `f(rank)` once for every rank `0..workers` and returns when all
    /// ranks are done.
    pub fn for_each_rank(&self, f: impl Fn(usize) + Sync + Send) {
        let p = self.workers;
        self.pool
            .install(|| (0..p).into_par_iter().with_max_len(1).for_each(&f));
    }

    /// Like [`for_each_rank`](Self::for_each_rank) but collects one value per rank, in rank order.
    pub fn map_ranks<T: Send>(&self, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
        let p = self.workers;
        self.pool
            .install(|| (0..p).into_par_iter().with_max_len(1).map(&f).collect())
    }
}

impl std::fmt::Debug for WorkerTeam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WorkerTeam")
            .field("workers", &self.workers)
            .finish()
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
