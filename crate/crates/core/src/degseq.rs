//! Degree sequences and the mutable residual state used during generation.
//!
//! Vertex ids are 0-based everywhere. Degrees are `u64` so that prefix sums
//! over very large sequences never overflow.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// A single vertex degree.
pub type Degree = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("malformed token {token:?} at position {position}")]
    MalformedToken { position: usize, token: String },
    #[error("degree {value} of vertex {vertex} is out of range for {n} vertices")]
    DegreeOutOfRange { vertex: usize, value: Degree, n: usize },
    #[error("input contains no degrees")]
    EmptyInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DecrementError {
    #[error("cannot pair vertex {0} with itself")]
    SelfPair(usize),
    #[error("residual degree of vertex {0} is already zero")]
    Underflow(usize),
    #[error("vertices {0} and {1} are already adjacent")]
    AlreadyAdjacent(usize, usize),
}

/// A validated degree sequence: `degrees[v]` is the degree of vertex `v` and
/// every entry lies in `0..=n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeSequence {
    degrees: Vec<Degree>,
    degree_sum: u64,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<Degree>) -> Result<Self, SequenceError> {
        let n = degrees.len();
        if let Some((vertex, &value)) = degrees
            .iter()
            .enumerate()
            .find(|&(_, &d)| d >= n as Degree)
        {
            return Err(SequenceError::DegreeOutOfRange { vertex, value, n });
        }
        let degree_sum = degrees.iter().sum();
        Ok(Self {
            degrees,
            degree_sum,
        })
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree_sum(&self) -> u64 {
        self.degree_sum
    }

    /// Number of edges in any realization. Only meaningful when the sum is even.
    pub fn edge_count(&self) -> u64 {
        self.degree_sum / 2
    }

    /// Copy of the degrees in non-increasing order.
    pub fn sorted_desc(&self) -> Vec<Degree> {
        let mut sorted = self.degrees.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted
    }

    pub fn into_inner(self) -> Vec<Degree> {
        self.degrees
    }
}

/// Writes the degrees separated by single spaces, followed by a newline.
impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_degrees(f, &self.degrees)
    }
}

pub(crate) fn write_degrees(f: &mut impl fmt::Write, degrees: &[Degree]) -> fmt::Result {
    for (i, d) in degrees.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{d}")?;
    }
    f.write_char('\n')
}

/// Parses whitespace-separated decimal integers without range validation.
/// `#` starts a comment running to the end of the line.
pub fn parse_degrees(text: &str) -> Result<Vec<Degree>, SequenceError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("");
        for token in body.split_whitespace() {
            // `u64::from_str` accepts a leading '+', which is not a plain decimal.
            let parsed = if token.bytes().all(|b| b.is_ascii_digit()) {
                token.parse::<Degree>().ok()
            } else {
                None
            };
            match parsed {
                Some(d) => out.push(d),
                None => {
                    return Err(SequenceError::MalformedToken {
                        position: out.len(),
                        token: token.to_string(),
                    })
                }
            }
        }
    }
    Ok(out)
}

/// Parses and validates a degree-sequence document.
pub fn parse_sequence(text: &str) -> Result<DegreeSequence, SequenceError> {
    let degrees = parse_degrees(text)?;
    if degrees.is_empty() {
        return Err(SequenceError::EmptyInput);
    }
    DegreeSequence::new(degrees)
}

/// Vertex ids ordered so that their degrees are non-increasing.
///
/// `block_start[x]` is the number of entries strictly greater than `x`, which
/// is the leftmost sorted position of the block holding value `x` whenever
/// that block is non-empty. The block of `x` is `block_start[x]..block_start[x - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedView {
    perm: Vec<usize>,
    inv_perm: Vec<usize>,
    block_start: Vec<usize>,
}

impl SortedView {
    /// Builds the view with ties broken by ascending vertex id.
    pub fn new(values: &[Degree]) -> Self {
        let n = values.len();
        let max = values.iter().copied().max().unwrap_or(0) as usize;
        // Counting sort keeps ties in ascending id order.
        let mut count = vec![0usize; max + 1];
        for &d in values {
            count[d as usize] += 1;
        }
        let mut block_start = vec![0usize; max + 1];
        let mut above = 0;
        for x in (0..=max).rev() {
            block_start[x] = above;
            above += count[x];
        }
        let mut next = block_start.clone();
        let mut perm = vec![0usize; n];
        for (v, &d) in values.iter().enumerate() {
            perm[next[d as usize]] = v;
            next[d as usize] += 1;
        }
        let mut inv_perm = vec![0usize; n];
        for (pos, &v) in perm.iter().enumerate() {
            inv_perm[v] = pos;
        }
        Self {
            perm,
            inv_perm,
            block_start,
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn position(&self, vertex: usize) -> usize {
        self.inv_perm[vertex]
    }

    pub fn vertex_at(&self, position: usize) -> usize {
        self.perm[position]
    }

    /// Number of entries strictly greater than `value`.
    pub fn count_above(&self, value: Degree) -> usize {
        self.block_start.get(value as usize).copied().unwrap_or(0)
    }

    /// Last sorted position of the block holding entries equal to `value`.
    pub fn block_last(&self, value: Degree) -> usize {
        debug_assert!(value >= 1);
        self.block_start[value as usize - 1] - 1
    }

    /// Decrements `values[vertex]` and restores sorted order in O(1) by first
    /// swapping the vertex into the last slot of its block.
    pub fn decrement_one(
        &mut self,
        values: &mut [Degree],
        vertex: usize,
    ) -> Result<(), DecrementError> {
        let x = values[vertex];
        if x == 0 {
            return Err(DecrementError::Underflow(vertex));
        }
        let p = self.inv_perm[vertex];
        let q = self.block_last(x);
        let other = self.perm[q];
        self.perm.swap(p, q);
        self.inv_perm[vertex] = q;
        self.inv_perm[other] = p;
        self.block_start[x as usize - 1] -= 1;
        values[vertex] = x - 1;
        Ok(())
    }

    /// Values read through the permutation.
    pub fn sorted_values(&self, values: &[Degree]) -> Vec<Degree> {
        self.perm.iter().map(|&v| values[v]).collect()
    }
}

/// Generation state: residual degrees, their sorted view, and the edges
/// assigned so far.
#[derive(Debug, Clone)]
pub struct ResidualState {
    residual: Vec<Degree>,
    view: SortedView,
    adjacency: Vec<HashSet<usize>>,
    assigned_edges: usize,
}

impl ResidualState {
    pub fn new(seq: &DegreeSequence) -> Self {
        Self::from_residual(seq.degrees().to_vec())
    }

    /// State with no edges assigned and the given residual degrees.
    pub fn from_residual(residual: Vec<Degree>) -> Self {
        let view = SortedView::new(&residual);
        let adjacency = vec![HashSet::new(); residual.len()];
        Self {
            residual,
            view,
            adjacency,
            assigned_edges: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.residual.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residual.is_empty()
    }

    pub fn residual(&self) -> &[Degree] {
        &self.residual
    }

    pub fn view(&self) -> &SortedView {
        &self.view
    }

    pub fn assigned_edges(&self) -> usize {
        self.assigned_edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> &HashSet<usize> {
        &self.adjacency[u]
    }

    pub fn sorted_residual(&self) -> Vec<Degree> {
        self.view.sorted_values(&self.residual)
    }

    /// Applies the pair decrement to `u` and `v` and records the edge.
    pub fn decrement_pair(&mut self, u: usize, v: usize) -> Result<(), DecrementError> {
        if u == v {
            return Err(DecrementError::SelfPair(u));
        }
        for w in [u, v] {
            if self.residual[w] == 0 {
                return Err(DecrementError::Underflow(w));
            }
        }
        if self.adjacency[u].contains(&v) {
            return Err(DecrementError::AlreadyAdjacent(u, v));
        }
        self.view.decrement_one(&mut self.residual, u)?;
        self.view.decrement_one(&mut self.residual, v)?;
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        self.assigned_edges += 1;
        Ok(())
    }

    /// Smallest vertex id among those with the minimum positive residual.
    pub fn min_positive_vertex(&self) -> Option<usize> {
        let positives = self.view.count_above(0);
        if positives == 0 {
            return None;
        }
        let x = self.residual[self.view.vertex_at(positives - 1)];
        let start = self.view.count_above(x);
        (start..positives).map(|p| self.view.vertex_at(p)).min()
    }

    pub fn is_exhausted(&self) -> bool {
        self.view.count_above(0) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn state(residual: &[Degree]) -> ResidualState {
        ResidualState::from_residual(residual.to_vec())
    }

    #[test]
    fn parses_sequences() {
        let seq = parse_sequence("3 3 2 2 2").unwrap();
        assert_eq!(seq.len(), 5);
        assert_eq!(seq.degree_sum(), 12);

        let zeros = parse_sequence("0 0 0").unwrap();
        assert_eq!((zeros.len(), zeros.degree_sum()), (3, 0));

        assert_eq!(
            parse_sequence("5 1 1 1"),
            Err(SequenceError::DegreeOutOfRange {
                vertex: 0,
                value: 5,
                n: 4
            })
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_sequence("  \n# nothing\n"), Err(SequenceError::EmptyInput));
        assert!(matches!(
            parse_sequence("1 -1"),
            Err(SequenceError::MalformedToken { position: 1, .. })
        ));
        assert!(matches!(
            parse_sequence("1 x 1"),
            Err(SequenceError::MalformedToken { position: 1, .. })
        ));
        assert!(matches!(
            parse_sequence("+1 1"),
            Err(SequenceError::MalformedToken { position: 0, .. })
        ));
        assert!(matches!(
            parse_sequence("99999999999999999999999 1"),
            Err(SequenceError::MalformedToken { .. })
        ));
    }

    #[test]
    fn comments_and_layout() {
        let seq = parse_sequence("# D1\n3 3\n\t2 2 # tail\n2\n").unwrap();
        assert_eq!(seq.degrees(), &[3, 3, 2, 2, 2]);
    }

    #[test]
    fn empty_sequence_is_constructible() {
        let seq = DegreeSequence::new(vec![]).unwrap();
        assert!(seq.is_empty());
        assert_eq!(seq.degree_sum(), 0);
    }

    #[test]
    fn pair_decrement_examples() {
        let mut s = state(&[3, 3, 2, 2, 2]);
        s.decrement_pair(2, 4).unwrap();
        assert_eq!(s.residual(), &[3, 3, 1, 2, 1]);

        let mut s = state(&[1, 1]);
        s.decrement_pair(0, 1).unwrap();
        assert_eq!(s.residual(), &[0, 0]);
        assert!(s.is_exhausted());

        let mut s = state(&[2, 3, 0, 2, 1]);
        s.decrement_pair(4, 1).unwrap();
        assert_eq!(s.residual(), &[2, 2, 0, 2, 0]);
    }

    #[test]
    fn pair_decrement_errors() {
        let mut s = state(&[1, 1, 0]);
        assert_eq!(s.decrement_pair(1, 1), Err(DecrementError::SelfPair(1)));
        assert_eq!(s.decrement_pair(0, 2), Err(DecrementError::Underflow(2)));
        // A failed call leaves the state untouched.
        assert_eq!(s.residual(), &[1, 1, 0]);
        assert_eq!(s.assigned_edges(), 0);
    }

    #[test]
    fn decrement_one_swaps_within_block() {
        let mut values = vec![3, 3, 2, 2, 2];
        let mut view = SortedView::new(&values);
        view.decrement_one(&mut values, 0).unwrap();
        assert_eq!(view.sorted_values(&values), vec![3, 2, 2, 2, 2]);
        assert_eq!(view.perm(), &[1, 0, 2, 3, 4]);

        let mut values = vec![2, 2];
        let mut view = SortedView::new(&values);
        view.decrement_one(&mut values, view.vertex_at(0)).unwrap();
        assert_eq!(view.sorted_values(&values), vec![2, 1]);

        let mut values = vec![5];
        let mut view = SortedView::new(&values);
        view.decrement_one(&mut values, 0).unwrap();
        assert_eq!(view.sorted_values(&values), vec![4]);

        let mut values = vec![0];
        let mut view = SortedView::new(&values);
        assert_eq!(
            view.decrement_one(&mut values, 0),
            Err(DecrementError::Underflow(0))
        );
    }

    #[test]
    fn min_positive_vertex_examples() {
        assert_eq!(state(&[3, 3, 2, 2, 2]).min_positive_vertex(), Some(2));
        assert_eq!(state(&[0, 0, 0]).min_positive_vertex(), None);
        assert_eq!(state(&[2, 3, 0, 2, 1]).min_positive_vertex(), Some(4));
        assert_eq!(state(&[]).min_positive_vertex(), None);
    }

    #[test]
    fn display_round_trips() {
        let seq = DegreeSequence::new(vec![3, 0, 2, 2, 1]).unwrap();
        let text = seq.to_string();
        assert_eq!(text, "3 0 2 2 1\n");
        assert_eq!(parse_sequence(&text).unwrap(), seq);
    }

    fn trace_strategy() -> impl Strategy<Value = (Vec<Degree>, Vec<(usize, usize)>)> {
        (2usize..24).prop_flat_map(|n| {
            (
                proptest::collection::vec(0..n as Degree, n),
                proptest::collection::vec((0..n, 0..n), 0..80),
            )
        })
    }

    proptest! {
        #[test]
        fn sorted_view_survives_random_traces((start, pairs) in trace_strategy()) {
            let mut s = ResidualState::from_residual(start.clone());
            let parity = start.iter().sum::<Degree>() % 2;
            let mut expected = start.clone();
            for (u, v) in pairs {
                let before = s.residual().to_vec();
                match s.decrement_pair(u, v) {
                    Ok(()) => {
                        expected[u] -= 1;
                        expected[v] -= 1;
                    }
                    Err(_) => prop_assert_eq!(s.residual(), &before[..]),
                }
                prop_assert_eq!(s.residual(), &expected[..]);
                let sorted = s.sorted_residual();
                prop_assert!(sorted.windows(2).all(|w| w[0] >= w[1]));
                let mut resorted = expected.clone();
                resorted.sort_unstable_by(|a, b| b.cmp(a));
                prop_assert_eq!(&sorted, &resorted);
                for (pos, &v) in s.view().perm().iter().enumerate() {
                    prop_assert_eq!(s.view().position(v), pos);
                }
                prop_assert_eq!(s.residual().iter().sum::<Degree>() % 2, parity);
                let want = expected
                    .iter()
                    .enumerate()
                    .filter(|&(_, &d)| d > 0)
                    .min_by_key(|&(v, &d)| (d, v))
                    .map(|(v, _)| v);
                prop_assert_eq!(s.min_positive_vertex(), want);
            }
        }
    }
}
