//! Biased sine part with partial-coloring fixup.

use super::intervals::BadIntervalSet;
use super::push::{interval_mean_sine, lm_iterate_signs, PushPlan};
use super::FlatConfig;
use crate::discrepancy::WalkParams;
use crate::error::{Error, Result};

/// Build the ±1 sine coefficients.
///
/// Starts the iterated partial-coloring walk at the plan's (gain-adjusted)
/// bias with two constraint families: one interval-mean functional per bad
/// interval and one pointwise functional per coarse grid point, all under the
/// uniform gate-minimal budget. The output is validated on a fresh grid:
/// (a) `|s| <= sine_sup_frac sqrt(n)` globally (with Bernstein slack for
/// off-grid points), (b) `|s| >= delta sqrt(n)` across every bad interval.
pub fn build_sine_part(
    plan: &PushPlan,
    intervals: &BadIntervalSet,
    s_freqs: &[u32],
    n: usize,
    rng_seed: u64,
    gain: f64,
    config: &FlatConfig,
) -> Result<Vec<i8>> {
    if s_freqs.is_empty() {
        return Err(Error::invalid("empty sine frequency set"));
    }
    let x0 = plan.bias_with_gain(gain);

    // Interval-mean rows plus a coarse global grid (pointwise rows).
    let mut rows: Vec<Vec<f64>> = intervals
        .intervals
        .iter()
        .map(|iv| s_freqs.iter().map(|&k| interval_mean_sine(*iv, k)).collect())
        .collect();
    let coarse = 64usize;
    for g in 0..coarse {
        let x = std::f64::consts::TAU * g as f64 / coarse as f64;
        rows.push(s_freqs.iter().map(|&k| (f64::from(k) * x).sin()).collect());
    }

    let dim = s_freqs.len();
    let eps = lm_iterate_signs(
        &rows,
        &x0,
        rng_seed,
        WalkParams {
            step_size: Some(1.0 / (dim as f64).sqrt()),
            max_time: 4.0,
            stick_tol: None,
            early_exit: true,
        },
    )?;
    validate_sine(&eps, intervals, s_freqs, n, config)?;
    Ok(eps)
}

/// Independent re-validation of conditions (a) and (b) on a fresh grid.
pub fn validate_sine(
    eps: &[i8],
    intervals: &BadIntervalSet,
    s_freqs: &[u32],
    n: usize,
    config: &FlatConfig,
) -> Result<()> {
    let sqrt_n = (n as f64).sqrt();
    let amps: Vec<f64> = eps.iter().map(|&e| f64::from(e)).collect();
    let poly = super::eval::TrigPoly::sine(s_freqs.to_vec(), amps);

    // (a) global bound with Bernstein margin: between grid points of spacing
    // h the value can grow by at most h/2 * deg * sup, so
    // sup <= grid_max / (1 - h deg / 2) for h deg < 2.
    let grid_points = config.validate_grid_mult * n;
    let deg = f64::from(*s_freqs.iter().max().expect("non-empty"));
    let h = std::f64::consts::TAU / grid_points as f64;
    let margin = 1.0 - 0.5 * h * deg;
    if margin <= 0.0 {
        return Err(Error::invalid("validation grid too coarse for the degree"));
    }
    let grid = poly.eval_grid(grid_points);
    let grid_max = grid.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let sup_est = grid_max / margin;
    let cap = config.sine_sup_frac * sqrt_n;
    if sup_est > cap {
        return Err(Error::Retryable(format!(
            "sine sup {sup_est:.2} exceeds cap {cap:.2}"
        )));
    }

    // (b) floor across every bad interval, sampled densely within each arc.
    let floor = intervals.delta * sqrt_n;
    let cell = std::f64::consts::TAU / grid_points as f64;
    for (idx, iv) in intervals.intervals.iter().enumerate() {
        let samples = ((iv.len() / cell).ceil() as usize).max(2) + 1;
        for s in 0..samples {
            let x = iv.lo + iv.len() * s as f64 / (samples - 1) as f64;
            let v = poly.eval(x);
            if v.abs() < floor {
                return Err(Error::Retryable(format!(
                    "sine floor violated on interval {idx} at x = {x:.5}: |{v:.3}| < {floor:.3}"
                )));
            }
        }
    }
    Ok(())
}
