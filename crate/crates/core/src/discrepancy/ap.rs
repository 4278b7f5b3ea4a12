//! Arithmetic-progression discrepancy of a ±1 coloring of `[n]`.

use super::SignedColoring;
use serde::{Deserialize, Serialize};

/// Both readings of the AP discrepancy; `segment_max` dominates `full_sum_max`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ApDiscrepancyReport {
    /// Max over progressions of the absolute prefix-sum maximum. Covers every
    /// finite segment {b, b+a, .., b+ka}.
    pub segment_max: u64,
    /// Max over (a, b) of |sum over the full zero-extended progression|.
    pub full_sum_max: u64,
}

/// Maximum absolute partial sum along any arithmetic progression
/// `{b, b+a, b+2a, ...} ∩ [1, n]` with `a >= 1`, `1 <= b <= n`.
///
/// Computed per residue class: the prefix sums of the class walk, including
/// the empty prefix, give every segment sum as a difference.
pub fn ap_discrepancy(f: &SignedColoring) -> u64 {
    ap_discrepancy_report(f).segment_max
}

/// Same scan, also reporting the full zero-extended progression sums.
pub fn ap_discrepancy_report(f: &SignedColoring) -> ApDiscrepancyReport {
    let n = f.len();
    assert!(n >= 1, "coloring must be non-empty");
    let mut segment_max: i64 = 0;
    let mut full_sum_max: i64 = 0;
    for a in 1..=n {
        for r in 1..=a.min(n) {
            // Walk b = r, r+a, r+2a, ... tracking prefix sums.
            let mut prefix: i64 = 0;
            let mut lo: i64 = 0; // min prefix so far (includes empty prefix)
            let mut hi: i64 = 0;
            let mut x = r;
            while x <= n {
                prefix += i64::from(f.get(x - 1));
                lo = lo.min(prefix);
                hi = hi.max(prefix);
                // Full progression starting at x is prefix_end - prefix_before(x);
                // the suffix sums are covered by the segment scan below, and the
                // b = r progression's full sum is just the final prefix.
                x += a;
            }
            segment_max = segment_max.max(hi - lo);
            // Full sums for every start b in this class: final - any prefix.
            // |final - prefix_before(b)| is maximized at lo or hi.
            full_sum_max = full_sum_max
                .max((prefix - lo).abs())
                .max((prefix - hi).abs());
        }
    }
    ApDiscrepancyReport { segment_max: segment_max as u64, full_sum_max: full_sum_max as u64 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coloring(signs: &[i8]) -> SignedColoring {
        SignedColoring::new(signs.to_vec())
    }

    /// Brute-force oracle: enumerate every (a, b) and every prefix length.
    fn brute_force(f: &SignedColoring) -> (u64, u64) {
        let n = f.len();
        let mut seg: i64 = 0;
        let mut full: i64 = 0;
        for a in 1..=n {
            for b in 1..=n {
                let mut sum: i64 = 0;
                let mut x = b;
                while x <= n {
                    sum += i64::from(f.get(x - 1));
                    seg = seg.max(sum.abs());
                    x += a;
                }
                full = full.max(sum.abs());
            }
        }
        (seg as u64, full as u64)
    }

    #[test]
    fn constant_coloring_full_interval() {
        assert_eq!(ap_discrepancy(&SignedColoring::constant(8, 1)), 8);
    }

    #[test]
    fn single_point() {
        assert_eq!(ap_discrepancy(&coloring(&[1])), 1);
    }

    #[test]
    fn alternating_hits_even_class() {
        // a = 2, b = 2 collects four -1 entries.
        let f = coloring(&[1, -1, 1, -1, 1, -1, 1, -1]);
        assert_eq!(ap_discrepancy(&f), 4);
        let (seg, _) = brute_force(&f);
        assert_eq!(seg, 4);
    }

    #[test]
    fn matches_brute_force_on_small_colorings() {
        // All 2^10 colorings of [10].
        for mask in 0u32..1 << 10 {
            let signs: Vec<i8> =
                (0..10).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
            let f = coloring(&signs);
            let rep = ap_discrepancy_report(&f);
            let (seg, full) = brute_force(&f);
            assert_eq!(rep.segment_max, seg);
            assert_eq!(rep.full_sum_max, full);
            assert!(rep.segment_max >= rep.full_sum_max);
        }
    }

    #[test]
    fn dominates_plain_sum() {
        let f = coloring(&[1, 1, -1, 1, -1, -1, 1]);
        let total: i64 = f.signs().iter().map(|&s| i64::from(s)).sum();
        assert!(ap_discrepancy(&f) >= total.unsigned_abs());
    }
}
