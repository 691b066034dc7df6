//! Graphicality of a pair-decremented sequence without materializing it.
//!
//! Decrementing an entry of value `x` in a non-increasing array keeps it
//! sorted if the decrement is applied to the last slot of the `x` block,
//! which is slot `w_x` (1-based). Two decrements of the same value hit slots
//! `w_x` and `w_x - 1`. The decremented sequence therefore differs from the
//! base in at most two known slots, and `H`, `w` and `C` of the new sequence
//! can be read off the base tables with O(1) corrections per lookup.

use super::{compute_weights, corrected_durfee, prefix_sums};
use crate::degseq::Degree;

/// Prefix sums, weights and corrected Durfee number of one sorted sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgTables {
    sorted: Vec<Degree>,
    h: Vec<u64>,
    w: Vec<u64>,
    durfee: usize,
}

impl EgTables {
    pub fn new(sorted: Vec<Degree>) -> Self {
        debug_assert!(super::is_non_increasing(&sorted));
        let h = prefix_sums(&sorted);
        let w = compute_weights(&sorted);
        let durfee = corrected_durfee(&sorted);
        Self {
            sorted,
            h,
            w,
            durfee,
        }
    }

    pub fn sorted(&self) -> &[Degree] {
        &self.sorted
    }

    pub fn durfee(&self) -> usize {
        self.durfee
    }

    /// Whether the sequence stays graphical after decrementing one entry of
    /// value `a` and a different entry of value `b`. Both values must be at
    /// least 1 and present in the sequence (twice, if `a == b`).
    pub fn pair_decrement_is_graphical(&self, a: Degree, b: Degree) -> bool {
        let n = self.sorted.len();
        debug_assert!(a >= 1 && b >= 1);
        let total = self.h[n];
        if total % 2 == 1 {
            return false;
        }
        // 1-based slots being decremented, and their original values.
        let (s1, s2) = if a == b {
            let last = self.w[a as usize] as usize;
            (last - 1, last)
        } else {
            (self.w[a as usize] as usize, self.w[b as usize] as usize)
        };
        let v1 = self.sorted[s1 - 1];
        let v2 = self.sorted[s2 - 1];
        debug_assert!(v1 >= 1 && v2 >= 1 && s1 != s2);

        let value = |j: usize| -> Degree {
            self.sorted[j - 1] - (j == s1) as Degree - (j == s2) as Degree
        };
        let h = |i: usize| -> u64 { self.h[i] - (s1 <= i) as u64 - (s2 <= i) as u64 };
        let w = |j: usize| -> u64 {
            self.w[j] - (v1 == j as Degree) as u64 - (v2 == j as Degree) as u64
        };
        let total = total - 2;

        let mut durfee = self.durfee;
        while durfee > 0 && value(durfee) < (durfee - 1) as Degree {
            durfee -= 1;
        }

        (1..=durfee).all(|k| {
            let ku = k as u64;
            let wk = w(k);
            let lhs = h(k);
            let rhs = if ku <= wk {
                ku * (ku - 1) + ku * (wk - ku) + total - h(wk as usize)
            } else {
                ku * (ku - 1) + total - lhs
            };
            lhs <= rhs
        })
    }
}
