//! Push coefficients and interval sign selection.

use super::intervals::BadIntervalSet;
use crate::discrepancy::{lovett_meka_partial_coloring, ConstraintSystem, PartialColoring, WalkParams};
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use serde::{Deserialize, Serialize};

/// Interval-mean functional `u_I(k) = (1/|I|) ∫_I sin ks ds`, in closed form.
pub fn interval_mean_sine(iv: super::intervals::Interval, k: u32) -> f64 {
    let kf = f64::from(k);
    ((kf * iv.lo).cos() - (kf * iv.hi).cos()) / (kf * iv.len())
}

/// `Delta(k) = sum_I alpha_I * (1/|I|) ∫_I sin ks ds` for every `k` in `s_freqs`.
/// Exact closed-form integrals.
pub fn compute_push_deltas(
    intervals: &BadIntervalSet,
    alphas: &[i8],
    s_freqs: &[u32],
) -> Vec<f64> {
    assert_eq!(alphas.len(), intervals.intervals.len(), "one alpha per interval");
    s_freqs
        .iter()
        .map(|&k| {
            intervals
                .intervals
                .iter()
                .zip(alphas)
                .map(|(iv, &a)| f64::from(a) * interval_mean_sine(*iv, k))
                .sum()
        })
        .collect()
}

/// Interval directions plus the sine-part bias they induce.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PushPlan {
    /// ±1 direction per interval.
    pub alphas: Vec<i8>,
    /// `Delta(k)` per sine frequency, aligned with the frequency list.
    pub deltas: Vec<f64>,
    /// Normalization constant: `|Delta(k)| <= c_push sqrt(gamma n)` holds.
    pub c_push: f64,
    /// `gamma * n` of the instance.
    pub gn: f64,
    /// Baseline bias `clip(Delta(k) / (c_push sqrt(gamma n)))`.
    pub bias: Vec<f64>,
}

impl PushPlan {
    /// Bias amplified by `gain` and clipped back into `[-1, 1]`; the sine
    /// stage raises the gain until the predicted push clears its target.
    pub fn bias_with_gain(&self, gain: f64) -> Vec<f64> {
        let denom = self.c_push * self.gn.sqrt();
        self.deltas
            .iter()
            .map(|&d| (gain * d / denom).clamp(-1.0, 1.0))
            .collect()
    }
}

/// Choose `alpha_I ∈ {±1}` by iterated partial coloring of the
/// `|S| x |I|` interval-mean matrix, so every `|Delta(k)|` stays below
/// `c_push sqrt(gamma n)`.
pub fn choose_interval_signs(
    intervals: &BadIntervalSet,
    s_freqs: &[u32],
    gn: f64,
    c_push: f64,
    rng_seed: u64,
    retries: u32,
) -> Result<PushPlan> {
    let dim = intervals.intervals.len();
    if dim == 0 {
        return Err(Error::invalid("need at least one interval"));
    }
    // Rows indexed by k: M_{k,I} = interval mean of sin ks over I.
    let rows: Vec<Vec<f64>> = s_freqs
        .iter()
        .map(|&k| {
            intervals
                .intervals
                .iter()
                .map(|iv| interval_mean_sine(*iv, k))
                .collect()
        })
        .collect();
    let bound = c_push * gn.sqrt();

    // Gram matrix of the interval functionals: G[i][j] = sum_k u_i(k) u_j(k).
    // Diagonal entries are each interval's own push weight; off-diagonal
    // entries are the interference between intervals.
    let gram: Vec<Vec<f64>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| (0..rows.len()).map(|r| rows[r][i] * rows[r][j]).sum())
                .collect()
        })
        .collect();

    let mut best: Option<(f64, Vec<i8>)> = None;
    for attempt in 0..retries.max(1) {
        let seed = derive_seed(rng_seed, "interval-signs", u64::from(attempt));
        let mut alphas = lm_iterate_signs(&rows, &vec![0.0; dim], seed, WalkParams {
            early_exit: true,
            ..WalkParams::default()
        })?;
        repair_interval_pushes(&mut alphas, &gram, intervals, s_freqs, bound);
        let deltas = compute_push_deltas(intervals, &alphas, s_freqs);
        let achieved = deltas.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
        if best.as_ref().map_or(true, |(b, _)| achieved < *b) {
            best = Some((achieved, alphas));
        }
        if achieved <= bound {
            break;
        }
    }
    let (achieved, alphas) = best.expect("at least one attempt");
    if achieved > bound {
        return Err(Error::validation(
            "push bound not met after retries",
            vec![("max_abs_delta".into(), achieved), ("bound".into(), bound)],
        ));
    }
    let deltas = compute_push_deltas(intervals, &alphas, s_freqs);
    let denom = c_push * gn.sqrt();
    let bias = deltas.iter().map(|&d| (d / denom).clamp(-1.0, 1.0)).collect();
    Ok(PushPlan { alphas, deltas, c_push, gn, bias })
}

/// Greedy sign flips that lift the weakest interval's effective push
/// `alpha_J (G alpha)_J` without breaking the `|Delta(k)|` bound.
///
/// Flipping the weakest interval J replaces its cross term by its negation,
/// taking `s_J` to `2 G_JJ - s_J > G_JJ`; a flip is kept only while every
/// `|Delta(k)|` stays within the bound.
fn repair_interval_pushes(
    alphas: &mut [i8],
    gram: &[Vec<f64>],
    intervals: &BadIntervalSet,
    s_freqs: &[u32],
    bound: f64,
) {
    let dim = alphas.len();
    if dim <= 1 {
        return;
    }
    let push_of = |alphas: &[i8], j: usize| -> f64 {
        let g_alpha: f64 = (0..dim)
            .map(|i| gram[j][i] * f64::from(alphas[i]))
            .sum();
        f64::from(alphas[j]) * g_alpha
    };
    for _ in 0..4 * dim {
        let (worst, s_worst) = (0..dim)
            .map(|j| (j, push_of(alphas, j)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        // Flipping takes s_worst to 2 G_jj - s_worst; only worth it while the
        // cross term is dragging the push below the interval's own weight.
        if s_worst >= 0.8 * gram[worst][worst] {
            break;
        }
        alphas[worst] = -alphas[worst];
        let deltas = compute_push_deltas(intervals, alphas, s_freqs);
        let achieved = deltas.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
        if achieved > bound {
            alphas[worst] = -alphas[worst];
            break;
        }
    }
}

/// Iterate the partial-coloring walk to a full ±1 vector: each round walks
/// the free coordinates from their current fractional values under the
/// uniform gate-minimal budget, freezes at least a quarter, and the last few
/// stragglers round to their sign.
///
/// Accepts `m >> dim` row families (unlike the Spencer wrapper, which is for
/// square-ish systems).
pub(crate) fn lm_iterate_signs(
    rows: &[Vec<f64>],
    x0: &[f64],
    rng_seed: u64,
    walk: WalkParams,
) -> Result<Vec<i8>> {
    let dim = x0.len();
    let m = rows.len();
    let budget = if m == 0 { 0.0 } else { 4.0 * (16.0 * m as f64).ln().sqrt() };
    let mut current: Vec<f64> = x0.iter().map(|&v| v.clamp(-1.0, 1.0)).collect();
    let mut frozen: Vec<bool> = current.iter().map(|&v| v.abs() >= 1.0).collect();

    let mut round = 0u32;
    loop {
        let free: Vec<usize> = (0..dim).filter(|&i| !frozen[i]).collect();
        if free.len() <= 2 || round >= 64 {
            break;
        }
        let sub_rows: Vec<Vec<f64>> =
            rows.iter().map(|r| free.iter().map(|&i| r[i]).collect()).collect();
        let sub = if m == 0 {
            ConstraintSystem::empty(free.len())
        } else {
            ConstraintSystem::uniform(sub_rows, budget)?
        };
        let x0_r =
            PartialColoring::from_values(free.iter().map(|&i| current[i]).collect())?;

        let mut advanced = false;
        for attempt in 0..6u32 {
            let seed = derive_seed(rng_seed, "lm-round", u64::from(round) << 8 | u64::from(attempt));
            match lovett_meka_partial_coloring(&sub, &x0_r, seed, walk) {
                Ok(pc) => {
                    for (r, &i) in free.iter().enumerate() {
                        current[i] = pc.values()[r];
                        if pc.is_frozen(r) {
                            frozen[i] = true;
                        }
                    }
                    advanced = true;
                    break;
                }
                Err(e) if e.is_retryable() => continue,
                Err(e) => return Err(e),
            }
        }
        if !advanced {
            break;
        }
        round += 1;
    }
    Ok(current.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::littlewood::intervals::{BadIntervalSet, Interval};

    fn set_of(intervals: Vec<Interval>) -> BadIntervalSet {
        let count = intervals.len();
        BadIntervalSet {
            intervals,
            delta: 0.1,
            count,
            max_length: 0.0,
            min_gap: 0.0,
            conditions: [true; 3],
        }
    }

    #[test]
    fn closed_form_on_half_circle() {
        // I = [0, π], alpha = 1: Delta(k) = (1 - cos kπ)/(kπ): 2/(kπ) for odd k, 0 even.
        let set = set_of(vec![Interval { lo: 0.0, hi: std::f64::consts::PI }]);
        let deltas = compute_push_deltas(&set, &[1], &[1, 2, 3, 4]);
        let pi = std::f64::consts::PI;
        assert!((deltas[0] - 2.0 / pi).abs() < 1e-12);
        assert!(deltas[1].abs() < 1e-12);
        assert!((deltas[2] - 2.0 / (3.0 * pi)).abs() < 1e-12);
        assert!(deltas[3].abs() < 1e-12);
    }

    #[test]
    fn symmetric_arc_about_zero_vanishes() {
        let set = set_of(vec![Interval { lo: -0.4, hi: 0.4 }]);
        let deltas = compute_push_deltas(&set, &[1], &[1, 2, 3, 7]);
        for d in deltas {
            assert!(d.abs() < 1e-12);
        }
    }

    #[test]
    fn opposite_signs_cancel() {
        let iv = Interval { lo: 0.3, hi: 0.5 };
        let set = set_of(vec![iv, iv]);
        let deltas = compute_push_deltas(&set, &[1, -1], &[1, 5, 9]);
        for d in deltas {
            assert!(d.abs() < 1e-12);
        }
    }

    #[test]
    fn additive_over_disjoint_sets() {
        let a = Interval { lo: 0.1, hi: 0.2 };
        let b = Interval { lo: 1.0, hi: 1.3 };
        let freqs = [1u32, 3, 8];
        let da = compute_push_deltas(&set_of(vec![a]), &[1], &freqs);
        let db = compute_push_deltas(&set_of(vec![b]), &[-1], &freqs);
        let dab = compute_push_deltas(&set_of(vec![a, b]), &[1, -1], &freqs);
        for i in 0..freqs.len() {
            assert!((dab[i] - (da[i] + db[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn single_interval_plan_meets_bound() {
        let set = set_of(vec![Interval { lo: 1.0, hi: 1.01 }]);
        let freqs: Vec<u32> = (1..=64).collect();
        let plan = choose_interval_signs(&set, &freqs, 8.0, 4.5, 3, 4).unwrap();
        // |Delta(k)| <= 1 <= c_push sqrt(gn).
        for d in &plan.deltas {
            assert!(d.abs() <= 4.5 * 8.0f64.sqrt());
        }
        assert!(plan.bias.iter().all(|b| b.abs() <= 1.0));
    }

    #[test]
    fn two_interval_plan_vs_exhaustive() {
        let ivs = vec![Interval { lo: 0.5, hi: 0.52 }, Interval { lo: 2.0, hi: 2.03 }];
        let set = set_of(ivs);
        let freqs: Vec<u32> = (1..=128).collect();
        let plan = choose_interval_signs(&set, &freqs, 16.0, 4.5, 9, 4).unwrap();
        let achieved = plan.deltas.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
        // Exhaustive best over the 4 sign patterns.
        let mut best = f64::INFINITY;
        for pat in [[1i8, 1], [1, -1], [-1, 1], [-1, -1]] {
            let d = compute_push_deltas(&set, &pat, &freqs);
            best = best.min(d.iter().fold(0.0f64, |m, &x| m.max(x.abs())));
        }
        assert!(achieved <= 4.5 * 4.0);
        assert!(achieved + 1e-12 >= best, "cannot beat the exhaustive optimum");
    }
}
