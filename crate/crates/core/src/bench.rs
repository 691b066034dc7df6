//! Strong-scaling harness.
//!
//! For each worker count the target runs `reps` times on the same input and
//! the median wall time is reported, along with the speedup over the first
//! row (one worker). Before any timing, the output at every worker count is
//! compared with the sequential output; a mismatch aborts the run. Only the
//! algorithm call is timed, never input preparation or I/O.

use std::fmt::Write as _;
use std::time::Instant;

use thiserror::Error;

use crate::degseq::{Degree, DegreeSequence};
use crate::generator::{generate, GenError};
use crate::graphicality::{check_degrees, check_degrees_with_threshold, Mode};
use crate::team::{TeamError, WorkerTeam};

pub const MIN_REPS: usize = 5;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("worker list must be ascending and start at 1, got {0:?}")]
    InvalidWorkers(Vec<usize>),
    #[error("at least {MIN_REPS} repetitions are required, got {0}")]
    TooFewReps(usize),
    #[error(transparent)]
    Team(#[from] TeamError),
    #[error("output with {workers} workers differs from the sequential output")]
    EquivalenceBreach { workers: usize },
    #[error(transparent)]
    Generation(#[from] GenError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub workers: usize,
    pub timings: Vec<f64>,
    pub median_seconds: f64,
    pub speedup: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub target: &'static str,
    pub input: String,
    pub reps: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// `workers,median_seconds,speedup` lines, optionally with a header.
    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str("workers,median_seconds,speedup\n");
        }
        for row in &self.rows {
            writeln!(out, "{},{:.6},{:.4}", row.workers, row.median_seconds, row.speedup)
                .expect("writing to a String");
        }
        out
    }
}

fn validate(workers: &[usize], reps: usize) -> Result<(), BenchError> {
    let ascending = workers.windows(2).all(|w| w[0] < w[1]);
    if workers.first() != Some(&1) || !ascending {
        return Err(BenchError::InvalidWorkers(workers.to_vec()));
    }
    if reps < MIN_REPS {
        return Err(BenchError::TooFewReps(reps));
    }
    Ok(())
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

fn time_rows(
    teams: &[WorkerTeam],
    reps: usize,
    mut run: impl FnMut(&WorkerTeam),
) -> Vec<BenchRow> {
    let mut rows: Vec<BenchRow> = teams
        .iter()
        .map(|team| {
            let timings: Vec<f64> = (0..reps)
                .map(|_| {
                    let start = Instant::now();
                    run(team);
                    start.elapsed().as_secs_f64()
                })
                .collect();
            BenchRow {
                workers: team.workers(),
                median_seconds: median(&timings),
                timings,
                speedup: 0.0,
            }
        })
        .collect();
    let base = rows[0].median_seconds;
    for (i, row) in rows.iter_mut().enumerate() {
        row.speedup = if i == 0 { 1.0 } else { base / row.median_seconds };
    }
    rows
}

fn teams(workers: &[usize]) -> Result<Vec<WorkerTeam>, BenchError> {
    workers
        .iter()
        .map(|&w| WorkerTeam::new(w).map_err(BenchError::from))
        .collect()
}

/// Times the graphicality test on `degrees`.
pub fn bench_eg(degrees: &[Degree], workers: &[usize], reps: usize) -> Result<BenchReport, BenchError> {
    validate(workers, reps)?;
    let teams = teams(workers)?;
    let expected = check_degrees(degrees, Mode::Sequential);
    for team in &teams {
        // Threshold 0 forces the parallel kernels even on small inputs.
        if check_degrees_with_threshold(degrees, Mode::Parallel(team), 0) != expected {
            return Err(BenchError::EquivalenceBreach {
                workers: team.workers(),
            });
        }
    }
    let rows = time_rows(&teams, reps, |team| {
        std::hint::black_box(check_degrees_with_threshold(degrees, Mode::Parallel(team), 0));
    });
    Ok(BenchReport {
        target: "eg",
        input: format!("n={}", degrees.len()),
        reps,
        rows,
    })
}

/// Times graph generation from `seq` with a fixed seed.
pub fn bench_gen(
    seq: &DegreeSequence,
    seed: u64,
    workers: &[usize],
    reps: usize,
) -> Result<BenchReport, BenchError> {
    validate(workers, reps)?;
    let teams = teams(workers)?;
    let (_, expected) = generate(seq, seed, Mode::Sequential)?;
    for team in &teams {
        let (_, record) = generate(seq, seed, Mode::Parallel(team))?;
        if record.trace != expected.trace {
            return Err(BenchError::EquivalenceBreach {
                workers: team.workers(),
            });
        }
    }
    let rows = time_rows(&teams, reps, |team| {
        std::hint::black_box(generate(seq, seed, Mode::Parallel(team)).expect("gate passed"));
    });
    Ok(BenchReport {
        target: "gen",
        input: format!("n={} m={} seed={seed}", seq.len(), seq.edge_count()),
        reps,
        rows,
    })
}
