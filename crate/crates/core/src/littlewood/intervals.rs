//! Bad-interval detection on the circle.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Closed arc `[lo, hi]` of `[0, 2π)`; `hi < lo` would wrap, but detection
/// splits or rotates so stored arcs never wrap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// Structural limits for conditions (1)-(3): count, length, gap.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IntervalLimits {
    pub max_count: usize,
    pub max_length: f64,
    pub min_gap: f64,
}

impl IntervalLimits {
    /// Limits `count <= K1 gamma n`, `length <= K2 / n`, `gap >= K3 / n`.
    pub fn from_constants(n: usize, gamma: f64, k1: f64, k2: f64, k3: f64) -> Self {
        IntervalLimits {
            max_count: (k1 * gamma * n as f64).floor() as usize,
            max_length: k2 / n as f64,
            min_gap: k3 / n as f64,
        }
    }
}

/// Disjoint sorted bad arcs with their detection threshold and statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BadIntervalSet {
    pub intervals: Vec<Interval>,
    /// Threshold delta: bad means `|c(x)| < delta * sqrt(n)`.
    pub delta: f64,
    pub count: usize,
    pub max_length: f64,
    pub min_gap: f64,
    /// Pass/fail per condition (count, length, gap).
    pub conditions: [bool; 3],
}

impl BadIntervalSet {
    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(Interval::len).sum()
    }
}

/// Scan `|c|` on a uniform grid of `grid_mult * n` points, flag maximal runs
/// below `delta * sqrt(n)`, extend each run one grid cell both ways, merge
/// runs separated by less than one cell (circularly), and validate the
/// structural limits.
///
/// On validation failure the offending statistics ride along in the error so
/// the caller can retry with a smaller `delta` or different `gamma`.
pub fn detect_bad_intervals(
    c: &dyn Fn(f64) -> f64,
    n: usize,
    delta: f64,
    grid_mult: usize,
    limits: IntervalLimits,
) -> Result<BadIntervalSet> {
    if delta <= 0.0 {
        return Err(Error::invalid("delta must be positive"));
    }
    let g = grid_mult * n;
    if g < 8 {
        return Err(Error::invalid("grid too coarse"));
    }
    let threshold = delta * (n as f64).sqrt();
    let tau = std::f64::consts::TAU;
    let cell = tau / g as f64;
    let bad: Vec<bool> = (0..g).map(|j| c(j as f64 * cell).abs() < threshold).collect();
    build_interval_set(&bad, cell, delta, limits)
}

/// Same detection from precomputed grid values (used when the caller already
/// has `c` on the grid).
pub fn detect_bad_intervals_from_grid(
    values: &[f64],
    threshold: f64,
    delta: f64,
    limits: IntervalLimits,
) -> Result<BadIntervalSet> {
    let g = values.len();
    let cell = std::f64::consts::TAU / g as f64;
    let bad: Vec<bool> = values.iter().map(|v| v.abs() < threshold).collect();
    build_interval_set(&bad, cell, delta, limits)
}

fn build_interval_set(
    bad: &[bool],
    cell: f64,
    delta: f64,
    limits: IntervalLimits,
) -> Result<BadIntervalSet> {
    let g = bad.len();
    let tau = std::f64::consts::TAU;

    if bad.iter().all(|&b| b) {
        // Whole circle flagged: the length condition cannot hold.
        return Err(Error::validation(
            "whole circle below threshold",
            vec![("count".into(), 1.0), ("max_length".into(), tau), ("min_gap".into(), 0.0)],
        ));
    }

    // Collect maximal bad runs as grid-index ranges, circularly.
    let mut runs: Vec<(usize, usize)> = Vec::new(); // [start, end] inclusive, may wrap
    let mut j = 0usize;
    // Start scanning from a good cell so wrap runs are contiguous.
    let start = (0..g).find(|&i| !bad[i]).expect("not all bad");
    while j < g {
        let idx = (start + j) % g;
        if bad[idx] {
            let run_start = j;
            while j < g && bad[(start + j) % g] {
                j += 1;
            }
            runs.push(((start + run_start) % g, (start + j - 1) % g));
        } else {
            j += 1;
        }
    }

    // Extend one cell on both sides and convert to arcs; `lo` may exceed `hi`
    // by wrapping, handled via unwrapped coordinates then reduced mod 2π when
    // reporting midpoints. We keep arcs in unwrapped form internally sorted by
    // lo, allowing hi > 2π for the final wrap arc.
    let mut arcs: Vec<(f64, f64)> = runs
        .iter()
        .map(|&(s, e)| {
            let lo = s as f64 * cell - cell;
            let mut hi = e as f64 * cell + cell;
            if e < s {
                hi += tau; // wrapped run
            }
            (lo, hi)
        })
        .collect();
    arcs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // Merge arcs separated by less than one cell, including across the wrap.
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in arcs {
        match merged.last_mut() {
            Some(last) if lo - last.1 < cell => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    if merged.len() > 1 {
        let first = merged[0];
        let last = *merged.last().unwrap();
        if (first.0 + tau) - last.1 < cell {
            merged[0] = (last.0 - tau, first.1.max(last.1 - tau));
            merged.pop();
        }
    }

    let intervals: Vec<Interval> = merged
        .iter()
        .map(|&(lo, hi)| Interval { lo, hi })
        .collect();
    let count = intervals.len();
    let max_length = intervals.iter().map(Interval::len).fold(0.0, f64::max);
    let min_gap = if count <= 1 {
        tau - max_length
    } else {
        let mut gap = f64::INFINITY;
        for w in intervals.windows(2) {
            gap = gap.min(w[1].lo - w[0].hi);
        }
        let wrap_gap = (intervals[0].lo + tau) - intervals.last().unwrap().hi;
        gap.min(wrap_gap)
    };

    let conditions = [
        count <= limits.max_count,
        max_length <= limits.max_length,
        count <= 1 || min_gap >= limits.min_gap,
    ];
    let set = BadIntervalSet { intervals, delta, count, max_length, min_gap, conditions };
    if conditions.iter().all(|&c| c) {
        Ok(set)
    } else {
        Err(Error::validation(
            format!(
                "interval conditions failed (count {}, length {}, gap {})",
                conditions[0], conditions[1], conditions[2]
            ),
            vec![
                ("count".into(), count as f64),
                ("max_length".into(), max_length),
                ("min_gap".into(), min_gap),
                ("max_count_allowed".into(), limits.max_count as f64),
                ("max_length_allowed".into(), limits.max_length),
                ("min_gap_allowed".into(), limits.min_gap),
            ],
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loose_limits() -> IntervalLimits {
        IntervalLimits { max_count: 100, max_length: 10.0, min_gap: 0.0 }
    }

    #[test]
    fn cosine_has_two_bad_arcs() {
        // |sqrt(n) cos x| < 0.5 sqrt(n) on (π/3, 2π/3) and (4π/3, 5π/3).
        let n = 64;
        let c = move |x: f64| (n as f64).sqrt() * x.cos();
        let set = detect_bad_intervals(&c, n, 0.5, 64, loose_limits()).unwrap();
        assert_eq!(set.count, 2);
        let third = std::f64::consts::PI / 3.0;
        for iv in &set.intervals {
            assert!((iv.len() - third).abs() < 0.02, "len {}", iv.len());
        }
        assert!(set.intervals[0].contains(std::f64::consts::FRAC_PI_2));
    }

    #[test]
    fn constant_above_threshold_is_clean() {
        let n = 64;
        let c = move |_x: f64| (n as f64).sqrt();
        let set = detect_bad_intervals(&c, n, 0.5, 16, loose_limits()).unwrap();
        assert_eq!(set.count, 0);
    }

    #[test]
    fn zero_function_fails_validation() {
        let c = |_x: f64| 0.0;
        let err = detect_bad_intervals(&c, 64, 0.5, 16, loose_limits());
        assert!(matches!(err, Err(Error::Validation { .. })));
    }

    #[test]
    fn wrap_around_run_merges() {
        // Bad near x = 0 from both sides.
        let c = |x: f64| {
            let d = (x.sin()).abs();
            10.0 * d
        };
        let set = detect_bad_intervals(&c, 64, 0.1, 64, loose_limits()).unwrap();
        // Bad where |sin x| < 0.1 sqrt(64)/10 = 0.08: near 0 (wrapping) and π.
        assert_eq!(set.count, 2);
    }

    #[test]
    fn count_limit_enforced() {
        let c = |x: f64| (32.0 * x).sin();
        let limits = IntervalLimits { max_count: 3, max_length: 10.0, min_gap: 0.0 };
        assert!(detect_bad_intervals(&c, 64, 0.01, 64, limits).is_err());
    }
}
