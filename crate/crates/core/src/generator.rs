//! Random simple graphs with an exactly prescribed degree sequence.
//!
//! Vertices are processed in order of minimum positive residual degree
//! (smallest id on ties). For the active vertex `u`, every edge is drawn from
//! the candidate set: vertices `v` not yet adjacent to `u` whose pairing with
//! `u` leaves a graphical residual sequence. A candidate is picked with
//! probability proportional to its residual degree. When the residual degree
//! of `u` equals the number of candidates, all of them are forced and are
//! connected at once.
//!
//! Parallel mode fans the admission tests out over the worker team. It reads
//! the same state and consumes the same random draws as sequential mode, so
//! both emit identical traces for a given seed.

use rayon::prelude::*;
use thiserror::Error;

use crate::degseq::{DecrementError, Degree, DegreeSequence, ResidualState};
use crate::graph::{normalize, Edge, Graph};
use crate::graphicality::{check_graphical, EgTables, GraphicalityReport, Mode};
use crate::rng::{draw_below, stream_rng, Stream};

/// Candidate pools smaller than this are tested on the calling thread.
const MIN_PARALLEL_CANDIDATES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("degree sequence is not graphical")]
    NotGraphical(GraphicalityReport),
    #[error("no candidate left for vertex {vertex} with residual degree {residual}")]
    InternalStuck { vertex: usize, residual: Degree },
    #[error("candidate set is empty")]
    EmptyCandidates,
    #[error(transparent)]
    Pair(#[from] DecrementError),
}

/// Admissible partners for the active vertex, in ascending id order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet {
    vertices: Vec<usize>,
    weight_sum: u64,
}

impl CandidateSet {
    fn from_vertices(vertices: Vec<usize>, residual: &[Degree]) -> Self {
        let weight_sum = vertices.iter().map(|&v| residual[v]).sum();
        Self {
            vertices,
            weight_sum,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Sum of residual degrees over the candidates when the set was built.
    pub fn weight_sum(&self) -> u64 {
        self.weight_sum
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Chance that [`sample_candidate`] returns `v` under `residual`.
    pub fn probability(&self, v: usize, residual: &[Degree]) -> f64 {
        if self.contains(v) {
            residual[v] as f64 / self.weight_sum as f64
        } else {
            0.0
        }
    }

    fn without(mut self, v: usize, residual: &[Degree]) -> Self {
        if let Ok(pos) = self.vertices.binary_search(&v) {
            self.vertices.remove(pos);
        }
        Self::from_vertices(self.vertices, residual)
    }
}

/// Everything needed to replay or weight one generation run.
#[derive(Debug, Clone, PartialEq)]
pub struct GenRecord {
    pub seed: u64,
    /// Edges in assignment order, each normalized to `(min, max)`.
    pub trace: Vec<Edge>,
    /// Natural log of the product of the sampled choice probabilities.
    /// Forced (batch) assignments contribute nothing.
    pub log_prob: f64,
    pub shortcut_batches: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenOptions {
    /// Connect all candidates at once when they are exactly as many as the
    /// residual degree of the active vertex.
    pub batch_shortcut: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        Self {
            batch_shortcut: true,
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.compensation
    }
}

/// Whether pairing `u` with `v` leaves a graphical residual sequence.
pub fn graphical_after_pair(
    state: &ResidualState,
    u: usize,
    v: usize,
) -> Result<bool, DecrementError> {
    if u == v {
        return Err(DecrementError::SelfPair(u));
    }
    let residual = state.residual();
    for w in [u, v] {
        if residual[w] == 0 {
            return Err(DecrementError::Underflow(w));
        }
    }
    let tables = EgTables::new(state.sorted_residual());
    Ok(tables.pair_decrement_is_graphical(residual[u], residual[v]))
}

/// Builds the candidate set for `u`. With no `pool`, every non-neighbor with
/// positive residual is considered; otherwise only the pooled vertices are
/// re-tested.
pub fn candidate_set(
    state: &ResidualState,
    u: usize,
    pool: Option<&CandidateSet>,
    mode: Mode<'_>,
) -> CandidateSet {
    let residual = state.residual();
    let du = residual[u];
    debug_assert!(du > 0);
    let admissible = |v: usize| v != u && residual[v] > 0 && !state.has_edge(u, v);
    let potential: Vec<usize> = match pool {
        None => (0..state.len()).filter(|&v| admissible(v)).collect(),
        Some(pool) => pool.vertices().iter().copied().filter(|&v| admissible(v)).collect(),
    };
    let tables = EgTables::new(state.sorted_residual());
    let test = |v: &usize| tables.pair_decrement_is_graphical(du, residual[*v]);
    // One admission flag per potential candidate, merged in id order.
    let admitted: Vec<bool> = match mode {
        Mode::Parallel(team) if potential.len() >= MIN_PARALLEL_CANDIDATES => team.install(|| {
            potential
                .par_iter()
                .with_min_len(MIN_PARALLEL_CANDIDATES / 2)
                .map(test)
                .collect()
        }),
        _ => potential.iter().map(test).collect(),
    };
    let vertices = potential
        .into_iter()
        .zip(admitted)
        .filter_map(|(v, ok)| ok.then_some(v))
        .collect();
    CandidateSet::from_vertices(vertices, residual)
}

/// Picks a candidate with probability proportional to its residual degree
/// using exactly one 64-bit draw.
pub fn sample_candidate(
    candidates: &CandidateSet,
    residual: &[Degree],
    rng: &mut impl rand::RngCore,
) -> Result<usize, GenError> {
    if candidates.is_empty() || candidates.weight_sum == 0 {
        return Err(GenError::EmptyCandidates);
    }
    let mut target = draw_below(rng, candidates.weight_sum);
    for &v in &candidates.vertices {
        let weight = residual[v];
        if target < weight {
            return Ok(v);
        }
        target -= weight;
    }
    unreachable!("draw is below the candidate weight sum")
}

pub fn generate(
    seq: &DegreeSequence,
    seed: u64,
    mode: Mode<'_>,
) -> Result<(Graph, GenRecord), GenError> {
    generate_with(seq, seed, mode, GenOptions::default())
}

pub fn generate_with(
    seq: &DegreeSequence,
    seed: u64,
    mode: Mode<'_>,
    options: GenOptions,
) -> Result<(Graph, GenRecord), GenError> {
    let report = check_graphical(seq, mode);
    if !report.graphical {
        return Err(GenError::NotGraphical(report));
    }
    let mut state = ResidualState::new(seq);
    let mut rng = stream_rng(seed, Stream::Generate);
    let mut trace = Vec::with_capacity(seq.edge_count() as usize);
    let mut log_prob = CompensatedSum::default();
    let mut shortcut_batches = 0;

    while let Some(u) = state.min_positive_vertex() {
        let mut pool: Option<CandidateSet> = None;
        while state.residual()[u] > 0 {
            let candidates = candidate_set(&state, u, pool.as_ref(), mode);
            let du = state.residual()[u];
            if candidates.is_empty() {
                return Err(GenError::InternalStuck {
                    vertex: u,
                    residual: du,
                });
            }
            if options.batch_shortcut && candidates.len() as u64 == du {
                for &v in candidates.vertices() {
                    state.decrement_pair(u, v)?;
                    trace.push(normalize(u, v));
                }
                shortcut_batches += 1;
                break;
            }
            let v = sample_candidate(&candidates, state.residual(), &mut rng)?;
            log_prob.add(candidates.probability(v, state.residual()).ln());
            state.decrement_pair(u, v)?;
            trace.push(normalize(u, v));
            pool = Some(candidates.without(v, state.residual()));
        }
    }

    let graph = Graph::from_edges(seq.len(), trace.iter().copied())
        .expect("generated edges are simple by construction");
    let record = GenRecord {
        seed,
        trace,
        log_prob: log_prob.value(),
        shortcut_batches,
    };
    Ok((graph, record))
}
