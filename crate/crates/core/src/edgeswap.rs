//! Degree-preserving edge swaps.
//!
//! One step draws two distinct edges `(a, b)` and `(c, d)` uniformly, with a
//! fair coin deciding the orientation of the second, and proposes replacing
//! them by `(a, d)` and `(c, b)`. The proposal is rejected when it would
//! create a self-loop or a parallel edge, or when the two edges share an
//! endpoint.

use rand::RngCore;
use thiserror::Error;

use crate::graph::Graph;
use crate::rng::draw_below;

/// Attempts allowed per requested accepted swap before giving up.
pub const ATTEMPT_CAP_FACTOR: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SwapError {
    #[error("edge swapping needs at least two edges, graph has {0}")]
    TooFewEdges(usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SwapStats {
    pub attempted: u64,
    pub accepted: u64,
    pub rejected_selfloop: u64,
    pub rejected_parallel: u64,
    pub rejected_degenerate: u64,
    /// Set when the attempt cap stopped the run before the budget was met.
    pub capped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Accepted,
    SelfLoop,
    Degenerate,
    Parallel,
}

impl SwapStats {
    fn record(&mut self, outcome: Outcome) {
        self.attempted += 1;
        match outcome {
            Outcome::Accepted => self.accepted += 1,
            Outcome::SelfLoop => self.rejected_selfloop += 1,
            Outcome::Degenerate => self.rejected_degenerate += 1,
            Outcome::Parallel => self.rejected_parallel += 1,
        }
    }
}

/// ⌈(m/2)·ln m⌉, the number of accepted swaps that rewires every edge once
/// in expectation.
pub fn default_budget(m: usize) -> u64 {
    if m < 2 {
        return 0;
    }
    let m = m as f64;
    (m / 2.0 * m.ln()).ceil() as u64
}

fn classify(g: &Graph, a: usize, b: usize, c: usize, d: usize) -> Outcome {
    if a == d || c == b {
        Outcome::SelfLoop
    } else if a == c || b == d {
        Outcome::Degenerate
    } else if g.has_edge(a, d) || g.has_edge(c, b) {
        Outcome::Parallel
    } else {
        Outcome::Accepted
    }
}

/// Applies the proposal built from edges `i` and `j`, taking the second edge
/// reversed when `flip` is set. The graph changes only on acceptance.
pub fn propose(g: &mut Graph, i: usize, j: usize, flip: bool) -> Outcome {
    debug_assert!(i != j);
    let (a, b) = g.edge(i);
    let (c, d) = if flip {
        let (x, y) = g.edge(j);
        (y, x)
    } else {
        g.edge(j)
    };
    let outcome = classify(g, a, b, c, d);
    if outcome == Outcome::Accepted {
        g.replace_edge(i, a, d);
        g.replace_edge(j, c, b);
    }
    outcome
}

/// One random proposal. Consumes exactly three draws.
pub fn swap_step(g: &mut Graph, rng: &mut impl RngCore) -> Result<Outcome, SwapError> {
    let m = g.edge_count();
    if m < 2 {
        return Err(SwapError::TooFewEdges(m));
    }
    let i = draw_below(rng, m as u64) as usize;
    let mut j = draw_below(rng, m as u64 - 1) as usize;
    if j >= i {
        j += 1;
    }
    let flip = rng.next_u64() >> 63 == 1;
    Ok(propose(g, i, j, flip))
}

/// Performs `swaps` accepted swaps (the default budget when `None`), giving
/// up after [`ATTEMPT_CAP_FACTOR`] attempts per requested swap.
pub fn randomize(
    g: &Graph,
    swaps: Option<u64>,
    rng: &mut impl RngCore,
) -> Result<(Graph, SwapStats), SwapError> {
    let m = g.edge_count();
    if m < 2 {
        return Err(SwapError::TooFewEdges(m));
    }
    let budget = swaps.unwrap_or_else(|| default_budget(m));
    let cap = budget.saturating_mul(ATTEMPT_CAP_FACTOR);
    let mut out = g.clone();
    let mut stats = SwapStats::default();
    while stats.accepted < budget {
        if stats.attempted >= cap {
            stats.capped = true;
            break;
        }
        stats.record(swap_step(&mut out, rng)?);
    }
    Ok((out, stats))
}
