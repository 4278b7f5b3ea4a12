//! Exhaustive pigeonhole oracle for small partial-coloring instances.
//!
//! Enumerates all `y ∈ {0,1}^n`, looks for a pair `y, y'` whose images under
//! `A` differ by at most `bound` in every row and whose Hamming distance is at
//! least `n/4`, and returns `x = y - y' ∈ {-1,0,1}^n`. The search is exact:
//! "none" means no qualifying pair exists, which makes the answer monotone in
//! `bound` by construction.

use super::{ConstraintSystem, PartialColoring};
use crate::error::{Error, Result};

/// Hard cap on `2^n * m` table entries.
const TABLE_CAP: usize = 30_000_000;

pub fn exhaustive_partial_coloring_oracle(
    system: &ConstraintSystem<f64>,
    bound: f64,
) -> Result<Option<PartialColoring<f64>>> {
    let n = system.dim();
    let m = system.num_rows();
    if n > 20 {
        return Err(Error::SizeLimit(format!("oracle enumerates 2^n; n = {n} > 20")));
    }
    if bound < 0.0 {
        return Err(Error::invalid("bound must be non-negative"));
    }
    let total: usize = 1usize << n;
    if total.saturating_mul(m.max(1)) > TABLE_CAP {
        return Err(Error::SizeLimit("image table too large".into()));
    }
    let need = n.div_ceil(4);

    // Images of every y, built by Gray-code single-bit updates.
    let mut images: Vec<f64> = vec![0.0; total * m.max(1)];
    let mut cur = vec![0.0f64; m];
    let mut prev_gray = 0u32;
    for idx in 1..total as u32 {
        let gray = idx ^ (idx >> 1);
        let flipped = (gray ^ prev_gray).trailing_zeros() as usize;
        let on = gray & (gray ^ prev_gray) != 0;
        for (j, row) in system.rows().iter().enumerate() {
            if on {
                cur[j] += row[flipped];
            } else {
                cur[j] -= row[flipped];
            }
        }
        images[gray as usize * m..gray as usize * m + m].copy_from_slice(&cur);
        prev_gray = gray;
    }

    let qualifies = |a: u32, b: u32| -> bool {
        if ((a ^ b).count_ones() as usize) < need {
            return false;
        }
        let ia = &images[a as usize * m..a as usize * m + m];
        let ib = &images[b as usize * m..b as usize * m + m];
        ia.iter().zip(ib).all(|(x, y)| (x - y).abs() <= bound)
    };

    // Tier 1: bucket by quantized image, anchor-scan each bucket. Same-cell
    // pairs differ by strictly less than the cell width `bound` per row, so a
    // hit here is already verified on the bound side.
    let mut buckets: std::collections::HashMap<Vec<i64>, Vec<u32>> =
        std::collections::HashMap::new();
    for y in 0..total as u32 {
        let img = &images[y as usize * m..y as usize * m + m];
        let key: Vec<i64> = img
            .iter()
            .map(|&v| {
                if bound > 0.0 {
                    (v / bound).floor() as i64
                } else {
                    v.to_bits() as i64
                }
            })
            .collect();
        buckets.entry(key).or_default().push(y);
    }
    for members in buckets.values() {
        if members.len() < 2 {
            continue;
        }
        let anchors = members.iter().take(64);
        for &a in anchors {
            for &b in members {
                if a != b && qualifies(a, b) {
                    return Ok(Some(pair_to_coloring(a, b, n)));
                }
            }
        }
    }

    // Tier 2: exact full-pair scan for small n.
    if n <= 14 {
        for a in 0..total as u32 {
            for b in (a + 1)..total as u32 {
                if qualifies(a, b) {
                    return Ok(Some(pair_to_coloring(a, b, n)));
                }
            }
        }
        return Ok(None);
    }

    // Tier 3: exact window scan ordered by the first row's value. Worst-case
    // quadratic, but only reached when the bucket pass found nothing.
    let mut order: Vec<u32> = (0..total as u32).collect();
    if m > 0 {
        order.sort_by(|&a, &b| {
            images[a as usize * m]
                .partial_cmp(&images[b as usize * m])
                .expect("finite images")
        });
    }
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            if m > 0 {
                let da = images[order[j] as usize * m] - images[order[i] as usize * m];
                if da > bound {
                    break;
                }
            }
            if qualifies(order[i], order[j]) {
                return Ok(Some(pair_to_coloring(order[i], order[j], n)));
            }
        }
    }
    Ok(None)
}

fn pair_to_coloring(a: u32, b: u32, n: usize) -> PartialColoring<f64> {
    let values: Vec<f64> = (0..n)
        .map(|i| f64::from((a >> i & 1) as i8 - (b >> i & 1) as i8))
        .collect();
    PartialColoring::from_values(values).expect("entries are -1, 0 or 1")
}
