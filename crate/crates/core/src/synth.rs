//! Synthetic degree sequences for experiments.
//!
//! Every kind yields a graphical sequence sorted non-increasing. An odd
//! degree sum is made even by decrementing one maximal entry. Random kinds
//! are redrawn until graphical, at most [`MAX_DRAWS`] times.

use rand::distributions::{Distribution, WeightedIndex};
use thiserror::Error;

use crate::degseq::{Degree, DegreeSequence};
use crate::graph::Graph;
use crate::graphicality::{check_degrees, Mode};
use crate::rng::{stream_rng, Stream};

pub const MAX_DRAWS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SynthKind {
    /// P(d) proportional to d^-gamma on 1..=dmax; `dmax` defaults to ⌊√n⌋.
    PowerLaw { gamma: f64, dmax: Option<Degree> },
    Regular { d: Degree },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no graphical sequence after {draws} draws ({kind:?}, n={n})")]
    Ungraphable { kind: SynthKind, n: usize, draws: usize },
}

/// Decrements one maximal entry when the sum is odd. Expects a
/// non-increasing slice, and keeps it that way.
fn force_even(sorted: &mut [Degree]) {
    if sorted.iter().sum::<Degree>() % 2 == 1 {
        let top = sorted[0];
        let last_top = sorted.partition_point(|&x| x == top) - 1;
        sorted[last_top] -= 1;
    }
}

fn sort_desc(d: &mut [Degree]) {
    d.sort_unstable_by(|a, b| b.cmp(a));
}

pub fn synthesize(kind: SynthKind, n: usize, seed: u64) -> Result<DegreeSequence, SynthError> {
    match kind {
        SynthKind::Regular { d } => {
            if n > 0 && d >= n as Degree {
                return Err(SynthError::InvalidParameters(format!(
                    "degree {d} needs more than {n} vertices"
                )));
            }
            let mut seq = vec![d; n];
            if n > 0 {
                force_even(&mut seq);
            }
            finish(seq, kind, n)
        }
        SynthKind::PowerLaw { gamma, dmax } => {
            if !(gamma.is_finite() && gamma > 0.0) {
                return Err(SynthError::InvalidParameters(format!(
                    "gamma must be positive, got {gamma}"
                )));
            }
            if n < 2 {
                return Err(SynthError::InvalidParameters(
                    "power-law sequences need at least 2 vertices".into(),
                ));
            }
            let dmax = dmax.unwrap_or((n as f64).sqrt() as Degree);
            if dmax == 0 || dmax >= n as Degree {
                return Err(SynthError::InvalidParameters(format!(
                    "dmax must lie in 1..{n}, got {dmax}"
                )));
            }
            let weights = (1..=dmax).map(|d| (d as f64).powf(-gamma));
            let dist = WeightedIndex::new(weights)
                .map_err(|e| SynthError::InvalidParameters(e.to_string()))?;
            let mut rng = stream_rng(seed, Stream::Synth);
            for _ in 0..MAX_DRAWS {
                let mut seq: Vec<Degree> =
                    (0..n).map(|_| dist.sample(&mut rng) as Degree + 1).collect();
                sort_desc(&mut seq);
                force_even(&mut seq);
                if check_degrees(&seq, Mode::Sequential).graphical {
                    return Ok(DegreeSequence::new(seq).expect("entries below n"));
                }
            }
            Err(SynthError::Ungraphable {
                kind,
                n,
                draws: MAX_DRAWS,
            })
        }
    }
}

fn finish(seq: Vec<Degree>, kind: SynthKind, n: usize) -> Result<DegreeSequence, SynthError> {
    if check_degrees(&seq, Mode::Sequential).graphical {
        Ok(DegreeSequence::new(seq).expect("entries below n"))
    } else {
        Err(SynthError::Ungraphable { kind, n, draws: 1 })
    }
}

/// Degree sequence of an existing graph, sorted non-increasing.
pub fn from_graph(g: &Graph) -> DegreeSequence {
    let mut d = g.degrees();
    sort_desc(&mut d);
    DegreeSequence::new(d).expect("a simple graph has degrees below n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_sequences() {
        let s = synthesize(SynthKind::Regular { d: 2 }, 4, 0).unwrap();
        assert_eq!(s.to_string(), "2 2 2 2\n");
        // 5 vertices of degree 3 have an odd sum.
        let s = synthesize(SynthKind::Regular { d: 3 }, 5, 0).unwrap();
        assert_eq!(s.degrees(), &[3, 3, 3, 3, 2]);
        assert!(synthesize(SynthKind::Regular { d: 4 }, 4, 0).is_err());
    }

    #[test]
    fn from_graph_sorts() {
        let g = Graph::from_edges(5, [(2, 4), (2, 0), (4, 1), (0, 3), (0, 1), (1, 3)]).unwrap();
        assert_eq!(from_graph(&g).to_string(), "3 3 2 2 2\n");
    }

    #[test]
    fn power_law_is_seeded_and_graphical() {
        let kind = SynthKind::PowerLaw {
            gamma: 2.5,
            dmax: None,
        };
        let a = synthesize(kind, 10_000, 11).unwrap();
        let b = synthesize(kind, 10_000, 11).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, synthesize(kind, 10_000, 12).unwrap());
        assert!(a.degrees().windows(2).all(|w| w[0] >= w[1]));
        assert!(a.degrees()[0] <= 100);
        assert_eq!(a.degree_sum() % 2, 0);
        assert!(check_degrees(a.degrees(), Mode::Sequential).graphical);
    }

    #[test]
    fn power_law_rejects_bad_parameters() {
        let bad = |gamma, dmax, n| synthesize(SynthKind::PowerLaw { gamma, dmax }, n, 0);
        assert!(bad(-1.0, None, 100).is_err());
        assert!(bad(2.0, Some(100), 100).is_err());
        assert!(bad(2.0, None, 1).is_err());
    }

    #[test]
    fn force_even_keeps_order() {
        let mut d = vec![4, 4, 3, 1, 1];
        force_even(&mut d);
        assert_eq!(d, vec![4, 3, 3, 1, 1]);
    }
}
