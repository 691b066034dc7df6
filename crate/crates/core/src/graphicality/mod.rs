//! Erdős–Gallai graphicality testing.
//!
//! The test runs in five steps over the non-increasing sequence
//! `d_1 >= d_2 >= ... >= d_n` (1-based, as in the textbook statement):
//!
//! 1. the corrected Durfee number `C = |{ j : d_j >= j - 1 }|`,
//! 2. prefix sums `H_i = d_1 + ... + d_i`,
//! 3. the parity of `H_n`,
//! 4. weights `w_j = |{ i : d_i >= j }|`,
//! 5. the first `C` inequalities, each evaluated in O(1) with the weights.
//!
//! Every step has a sequential and a data-parallel implementation; the two
//! produce identical reports.

mod overlay;
mod parallel;

pub use overlay::EgTables;
pub use parallel::{
    check_inequalities_parallel, compute_weights_parallel, corrected_durfee_parallel,
    prefix_sums_parallel,
};

use rayon::slice::ParallelSliceMut;

use crate::degseq::{Degree, DegreeSequence};
use crate::team::WorkerTeam;

/// Sequences shorter than this are checked sequentially even in parallel mode.
pub const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy)]
pub enum Mode<'a> {
    Sequential,
    Parallel(&'a WorkerTeam),
}

/// First violated inequality, with both sides as evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub k: usize,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphicalityReport {
    pub graphical: bool,
    pub parity_ok: bool,
    pub durfee: usize,
    /// Smallest violated inequality index. Absent when the sequence is
    /// graphical or when the parity check already rejected it.
    pub failing: Option<Violation>,
}

impl GraphicalityReport {
    pub fn failing_k(&self) -> Option<usize> {
        self.failing.map(|v| v.k)
    }
}

/// Corrected Durfee number of a non-increasing sequence.
pub fn corrected_durfee(sorted: &[Degree]) -> usize {
    let mut durfee = 0;
    for (idx, &d) in sorted.iter().enumerate() {
        // 1-based j = idx + 1, predicate d_j >= j - 1.
        if d < idx as Degree {
            break;
        }
        durfee = idx + 1;
    }
    durfee
}

/// `H` with `H[0] = 0` and `H[i] = d_1 + ... + d_i`.
pub fn prefix_sums(degrees: &[Degree]) -> Vec<u64> {
    let mut h = Vec::with_capacity(degrees.len() + 1);
    h.push(0);
    let mut acc = 0u64;
    for &d in degrees {
        acc += d;
        h.push(acc);
    }
    h
}

/// Calls `write(j, value)` for every weight store that position `i` (1-based)
/// performs in the descent loop. Indices above `n` are never needed by the
/// inequality check and are skipped, as is index 0.
#[inline]
pub(crate) fn descent_writes(sorted: &[Degree], i: usize, mut write: impl FnMut(usize, u64)) {
    let n = sorted.len();
    let prev = if i == 1 {
        n.saturating_sub(1) as Degree
    } else {
        sorted[i - 2]
    };
    let cur = sorted[i - 1];
    if cur < prev {
        let top = prev.min(n as Degree);
        for j in (cur + 1..=top).rev() {
            write(j as usize, (i - 1) as u64);
        }
        if cur >= 1 && cur <= n as Degree {
            write(cur as usize, i as u64);
        }
    }
}

/// Weight array of length `n + 1`; `w[j]` for `1 <= j <= n` is the number of
/// entries `>= j`. `w[0]` is unused and left at 0.
pub fn compute_weights(sorted: &[Degree]) -> Vec<u64> {
    let n = sorted.len();
    let mut w = vec![0u64; n + 1];
    for i in 1..=n {
        descent_writes(sorted, i, |j, value| w[j] = value);
    }
    if let Some(&last) = sorted.last() {
        for slot in w.iter_mut().take(last.min(n as Degree) as usize + 1).skip(1) {
            *slot = n as u64;
        }
    }
    w
}

/// Both sides of inequality `k` (1-based) using the weight shortcut.
#[inline]
pub(crate) fn inequality_sides(k: usize, h: &[u64], w: &[u64]) -> (u64, u64) {
    let n = h.len() - 1;
    let total = h[n];
    let ku = k as u64;
    let wk = w[k];
    let lhs = h[k];
    let rhs = if ku <= wk {
        ku * (ku - 1) + ku * (wk - ku) + total - h[wk as usize]
    } else {
        ku * (ku - 1) + total - h[k]
    };
    (lhs, rhs)
}

/// Evaluates inequalities `1..=durfee` in order and returns the first violation.
pub fn check_inequalities(h: &[u64], w: &[u64], durfee: usize) -> Option<Violation> {
    first_violation(h, w, 1, durfee)
}

pub(crate) fn first_violation(h: &[u64], w: &[u64], from: usize, to: usize) -> Option<Violation> {
    (from..=to).find_map(|k| {
        let (lhs, rhs) = inequality_sides(k, h, w);
        (lhs > rhs).then_some(Violation { k, lhs, rhs })
    })
}

pub fn is_non_increasing(degrees: &[Degree]) -> bool {
    degrees.windows(2).all(|w| w[0] >= w[1])
}

fn sort_desc(degrees: &[Degree], mode: Mode<'_>) -> Vec<Degree> {
    let mut sorted = degrees.to_vec();
    match mode {
        Mode::Sequential => sorted.sort_unstable_by(|a, b| b.cmp(a)),
        Mode::Parallel(team) => team.install(|| sorted.par_sort_unstable_by(|a, b| b.cmp(a))),
    }
    sorted
}

/// Graphicality of a validated sequence.
pub fn check_graphical(seq: &DegreeSequence, mode: Mode<'_>) -> GraphicalityReport {
    check_degrees(seq.degrees(), mode)
}

/// Graphicality of an arbitrary list of non-negative integers, in any order.
/// Entries above `n - 1` are allowed and simply make the first inequality fail.
pub fn check_degrees(degrees: &[Degree], mode: Mode<'_>) -> GraphicalityReport {
    check_degrees_with_threshold(degrees, mode, PARALLEL_THRESHOLD)
}

/// As [`check_degrees`], with an explicit cutoff below which parallel mode
/// falls back to the sequential path.
pub fn check_degrees_with_threshold(
    degrees: &[Degree],
    mode: Mode<'_>,
    threshold: usize,
) -> GraphicalityReport {
    let mode = match mode {
        Mode::Parallel(_) if degrees.len() < threshold => Mode::Sequential,
        m => m,
    };
    if is_non_increasing(degrees) {
        check_sorted(degrees, mode)
    } else {
        check_sorted(&sort_desc(degrees, mode), mode)
    }
}

/// Runs the pipeline on a sequence already in non-increasing order.
pub fn check_sorted(sorted: &[Degree], mode: Mode<'_>) -> GraphicalityReport {
    debug_assert!(is_non_increasing(sorted));
    let (durfee, h) = match mode {
        Mode::Sequential => (corrected_durfee(sorted), prefix_sums(sorted)),
        Mode::Parallel(team) => (
            corrected_durfee_parallel(sorted, team),
            prefix_sums_parallel(sorted, team),
        ),
    };
    let total = *h.last().expect("prefix sums start with H_0");
    if total % 2 == 1 {
        return GraphicalityReport {
            graphical: false,
            parity_ok: false,
            durfee,
            failing: None,
        };
    }
    let failing = match mode {
        Mode::Sequential => check_inequalities(&h, &compute_weights(sorted), durfee),
        Mode::Parallel(team) => {
            let w = compute_weights_parallel(sorted, team);
            check_inequalities_parallel(&h, &w, durfee, team)
        }
    };
    GraphicalityReport {
        graphical: failing.is_none(),
        parity_ok: true,
        durfee,
        failing,
    }
}


#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use proptest::prelude::*;

    fn seq(d: &[Degree]) -> GraphicalityReport {
        check_degrees(d, Mode::Sequential)
    }

    #[test]
    fn durfee_examples() {
        assert_eq!(corrected_durfee(&[3, 2, 2, 2, 1]), 3);
        assert_eq!(corrected_durfee(&[0, 0, 0, 0]), 1);
        assert_eq!(corrected_durfee(&[4, 4, 4, 4, 4]), 5);
        assert_eq!(corrected_durfee(&[]), 0);
    }

    #[test]
    fn prefix_sum_examples() {
        assert_eq!(prefix_sums(&[3, 3, 2, 2, 2]), vec![0, 3, 6, 8, 10, 12]);
        assert_eq!(prefix_sums(&[0, 0, 0]), vec![0, 0, 0, 0]);
        assert_eq!(prefix_sums(&[4, 3, 2, 1]), vec![0, 4, 7, 9, 10]);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(&compute_weights(&[3, 2, 2, 2, 1])[1..5], &[5, 4, 1, 0]);
        assert_eq!(&compute_weights(&[0, 0])[1..2], &[0]);
        assert_eq!(&compute_weights(&[3, 3, 2, 2, 2])[1..5], &[5, 5, 2, 0]);
    }

    #[test]
    fn inequality_examples() {
        let d1 = [3, 3, 2, 2, 2];
        let ok = check_inequalities(
            &prefix_sums(&d1),
            &compute_weights(&d1),
            corrected_durfee(&d1),
        );
        assert_eq!(ok, None);

        let d2 = [4, 3, 2, 1];
        let bad = check_inequalities(
            &prefix_sums(&d2),
            &compute_weights(&d2),
            corrected_durfee(&d2),
        );
        assert_eq!(bad, Some(Violation { k: 1, lhs: 4, rhs: 3 }));

        let single = [1, 1];
        assert_eq!(
            check_inequalities(&prefix_sums(&single), &compute_weights(&single), 2),
            None
        );
    }

    #[test]
    fn report_examples() {
        let d1 = seq(&[3, 3, 2, 2, 2]);
        assert!(d1.graphical && d1.parity_ok);
        assert_eq!(d1.failing, None);

        let odd = seq(&[1, 0, 0]);
        assert!(!odd.graphical);
        assert!(!odd.parity_ok);
        assert_eq!(odd.failing, None);

        let d2 = seq(&[4, 3, 2, 1]);
        assert!(!d2.graphical && d2.parity_ok);
        assert_eq!(d2.failing_k(), Some(1));
    }

    #[test]
    fn degenerate_sequences_are_graphical() {
        let empty = seq(&[]);
        assert!(empty.graphical);
        assert_eq!(empty.durfee, 0);
        assert!(seq(&[0]).graphical);
        assert!(seq(&[0, 0, 0, 0]).graphical);
    }

    #[test]
    fn unsorted_input_is_sorted_first() {
        assert_eq!(seq(&[2, 3, 2, 3, 2]), seq(&[3, 3, 2, 2, 2]));
        assert!(!seq(&[1, 2, 3, 4]).graphical);
    }

    #[test]
    fn oversized_degree_fails_first_inequality() {
        let r = seq(&[10, 1, 1]);
        assert!(r.parity_ok);
        assert_eq!(r.failing, Some(Violation { k: 1, lhs: 10, rhs: 2 }));
    }

    #[test]
    fn matches_exhaustive_search_up_to_six_vertices() {
        // The full n = 7 sweep lives in the acceptance suite.
        fn rec(prefix: &mut Vec<Degree>, n: usize, max: Degree) {
            if prefix.len() == n {
                assert_eq!(seq(prefix).graphical, realizable(prefix), "{prefix:?}");
                return;
            }
            let top = prefix.last().copied().unwrap_or(max);
            for d in 0..=top {
                prefix.push(d);
                rec(prefix, n, max);
                prefix.pop();
            }
        }
        for n in 0..=6 {
            rec(&mut Vec::new(), n, 6);
        }
    }

    fn sorted_seq(max_n: usize) -> impl Strategy<Value = Vec<Degree>> {
        (0..=max_n)
            .prop_flat_map(|n| proptest::collection::vec(0..(n.max(1) as Degree), n))
            .prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            })
    }

    proptest! {
        #[test]
        fn weights_match_counting(d in sorted_seq(60)) {
            prop_assert_eq!(compute_weights(&d), count_weights(&d));
        }

        #[test]
        fn weights_converge_under_any_order(
            d in sorted_seq(60),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let n = d.len();
            let mut order: Vec<usize> = (1..=n).collect();
            order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let mut w = vec![0u64; n + 1];
            for i in order {
                descent_writes(&d, i, |j, v| w[j] = w[j].max(v));
            }
            if let Some(&last) = d.last() {
                w[1..=last as usize].fill(n as u64);
            }
            prop_assert_eq!(w, compute_weights(&d));
        }

        #[test]
        fn durfee_suffices(d in sorted_seq(40)) {
            prop_assert_eq!(seq(&d).graphical, all_inequalities(&d));
        }

        #[test]
        fn report_invariants(d in sorted_seq(40)) {
            let r = seq(&d);
            if r.graphical {
                prop_assert!(r.parity_ok && r.failing.is_none());
            }
            if let Some(v) = r.failing {
                prop_assert!(1 <= v.k && v.k <= r.durfee);
                prop_assert!(v.lhs > v.rhs);
            }
            if !d.is_empty() {
                prop_assert!(1 <= r.durfee && r.durfee <= d.len());
            }
        }
    }
}
