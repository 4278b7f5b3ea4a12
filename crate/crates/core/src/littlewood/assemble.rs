//! Full pipeline: cosine part, bad intervals, push plan, sine part, assembly.

use super::cosine::build_cosine_part;
use super::eval::evaluate_on_circle;
use super::intervals::{detect_bad_intervals_from_grid, BadIntervalSet, IntervalLimits};
use super::push::choose_interval_signs;
use super::sine::build_sine_part;
use super::{FlatConfig, LittlewoodPoly};
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub min_abs: f64,
    pub max_abs: f64,
    /// `max_abs / min_abs`; absent when the minimum is (numerically) zero.
    pub ratio: Option<f64>,
    /// Angles (radians) where the extrema occur.
    pub argmin: f64,
    pub argmax: f64,
    pub grid_points: usize,
}

/// Grid extrema of `|P|` on `grid_multiplier * degree` points.
pub fn flatness_report(poly: &LittlewoodPoly, grid_multiplier: usize) -> FlatnessReport {
    flatness_of_coeffs(&poly.as_f64_coeffs(), grid_multiplier)
}

/// Same report for a raw coefficient sequence (low to high).
pub fn flatness_of_coeffs(coeffs: &[f64], grid_multiplier: usize) -> FlatnessReport {
    let degree = coeffs.len().saturating_sub(1).max(1);
    let grid_points = grid_multiplier * degree;
    let values = evaluate_on_circle(coeffs, grid_points).expect("non-empty coefficients");
    let mut min_abs = f64::INFINITY;
    let mut max_abs = 0.0f64;
    let (mut argmin, mut argmax) = (0usize, 0usize);
    for (j, &(re, im)) in values.iter().enumerate() {
        let a = (re * re + im * im).sqrt();
        if a < min_abs {
            min_abs = a;
            argmin = j;
        }
        if a > max_abs {
            max_abs = a;
            argmax = j;
        }
    }
    let to_angle = |j: usize| std::f64::consts::TAU * j as f64 / grid_points as f64;
    FlatnessReport {
        min_abs,
        max_abs,
        ratio: if min_abs > 1e-12 { Some(max_abs / min_abs) } else { None },
        argmin: to_angle(argmin),
        argmax: to_angle(argmax),
        grid_points,
    }
}

/// Everything the pipeline produced, for reporting and diagnostics.
#[derive(Debug, Clone)]
pub struct FlatOutcome {
    pub poly: LittlewoodPoly,
    pub report: FlatnessReport,
    pub intervals: BadIntervalSet,
    pub bias_gain: f64,
    pub attempts: u32,
}

/// Run the full flat-polynomial pipeline at quarter-degree `n`.
///
/// The real part `1 + 2c(x)` is deterministic; the randomized stages (interval
/// directions and the sine coloring) retry with derived seeds until the
/// assembled polynomial meets the flatness targets or the retry budget runs
/// out.
pub fn assemble_flat_littlewood(
    n: usize,
    gamma: f64,
    delta: f64,
    rng_seed: u64,
    config: &FlatConfig,
) -> Result<FlatOutcome> {
    if delta <= 0.0 || delta >= gamma {
        return Err(Error::invalid("need 0 < delta < gamma"));
    }
    let cosine = build_cosine_part(n, gamma)?;
    let sqrt_n = (n as f64).sqrt();
    let len = 4 * n + 1;
    let target_min = config.min_abs_frac * (len as f64).sqrt();
    let target_max = config.max_abs_frac * (len as f64).sqrt();

    // Bad intervals of the shifted handle c + eps0/2: runs where the real
    // part eps0 + 2c of the assembled polynomial is small.
    let shifted = cosine.handle(0.5);
    let det_grid = config.detect_grid_mult * n;
    let cgrid = shifted.eval_grid(det_grid);
    let limits =
        IntervalLimits::from_constants(n, gamma, config.k1_count, config.k2_length, config.k3_gap);
    let intervals = detect_bad_intervals_from_grid(&cgrid, delta * sqrt_n, delta, limits)?;

    // Sine frequencies: the complement of the cosine block in [1, 2n].
    let in_c = |k: u32| (cosine.big_t..3 * cosine.big_t).contains(&k);
    let s_freqs: Vec<u32> = (1..=2 * n as u32).filter(|&k| !in_c(k)).collect();

    // Pointwise demands on |s|: the flatness target where the real part is
    // weak, and the delta floor across detected intervals.
    let trouble_threshold = 1.3 * target_min;
    let mut demand_points: Vec<(f64, f64)> = Vec::new();
    for (j, &cv) in cgrid.iter().enumerate() {
        let re = 2.0 * cv;
        if re.abs() < trouble_threshold {
            let x = std::f64::consts::TAU * j as f64 / det_grid as f64;
            let need = 0.5 * (trouble_threshold.powi(2) - re * re).max(0.0).sqrt();
            demand_points.push((x, need));
        }
    }
    for iv in &intervals.intervals {
        let samples = 8;
        for s in 0..=samples {
            let x = iv.lo + iv.len() * s as f64 / samples as f64;
            demand_points.push((x, 1.1 * delta * sqrt_n));
        }
    }

    let gn = gamma * n as f64;
    let mut last_err: Option<Error> = None;
    for attempt in 0..config.pipeline_retries.max(1) {
        let plan_seed = derive_seed(rng_seed, "push-plan", u64::from(attempt));
        let plan = match choose_interval_signs(
            &intervals,
            &s_freqs,
            gn,
            config.c_push,
            plan_seed,
            config.stage_retries,
        ) {
            Ok(p) => p,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let gain = select_bias_gain(
            &plan,
            &s_freqs,
            &demand_points,
            std::f64::consts::TAU / det_grid as f64,
        );

        let mut eps_s: Option<Vec<i8>> = None;
        for stage_try in 0..config.stage_retries.max(1) {
            let seed = derive_seed(
                rng_seed,
                "sine-part",
                u64::from(attempt) << 8 | u64::from(stage_try),
            );
            match build_sine_part(&plan, &intervals, &s_freqs, n, seed, gain, config) {
                Ok(e) => {
                    eps_s = Some(e);
                    break;
                }
                Err(e) if e.is_retryable() => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        let Some(eps_s) = eps_s else { continue };

        let poly = LittlewoodPoly::from_parts(
            n,
            gamma,
            1,
            cosine.freqs.clone(),
            &cosine.coeffs,
            s_freqs.clone(),
            &eps_s,
        )?;
        let report = flatness_report(&poly, 64);
        if report.min_abs >= target_min && report.max_abs <= target_max {
            return Ok(FlatOutcome { poly, report, intervals, bias_gain: gain, attempts: attempt + 1 });
        }
        last_err = Some(Error::Retryable(format!(
            "flatness targets missed: min {:.3} (need {:.3}), max {:.3} (cap {:.3})",
            report.min_abs, target_min, report.max_abs, target_max
        )));
    }
    Err(Error::Pipeline {
        stage: "assemble_flat_littlewood".into(),
        reason: last_err.map_or("retry budget exhausted".into(), |e| e.to_string()),
    })
}

/// Pick the bias gain by minimizing the predicted number of demand points the
/// sampled sine part would miss: with mean `m(x) = sum_k x0_k sin kx` and the
/// residual coin-flip deviation treated as Gaussian of variance
/// `sum (1 - x0_k^2) sin^2`, each point misses with probability
/// `P(|N(m, sigma)| < need)`. Neighboring grid points are correlated over
/// roughly `1 / (2 deg)` of the circle, so the sum is discounted accordingly.
fn select_bias_gain(
    plan: &super::push::PushPlan,
    s_freqs: &[u32],
    demand_points: &[(f64, f64)],
    grid_cell: f64,
) -> f64 {
    if demand_points.is_empty() {
        return 1.0;
    }
    let deg = f64::from(*s_freqs.iter().max().expect("non-empty"));
    let corr_block = (1.0 / (deg * grid_cell)).max(1.0);
    const GAINS: [f64; 10] = [1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0];
    let mut best = (f64::INFINITY, 1.0);
    for &g in &GAINS {
        let x0 = plan.bias_with_gain(g);
        let mut expected_misses = 0.0;
        for &(x, need) in demand_points {
            let mut mean = 0.0;
            let mut var = 0.0;
            for (&k, &b) in s_freqs.iter().zip(&x0) {
                let s = (f64::from(k) * x).sin();
                mean += b * s;
                var += (1.0 - b * b) * s * s;
            }
            expected_misses += window_mass(mean, var.sqrt(), need);
        }
        expected_misses /= corr_block;
        if expected_misses < best.0 * 0.9 {
            best = (expected_misses, g);
        }
    }
    best.1
}

/// `P(|N(mean, sigma)| < t)`.
fn window_mass(mean: f64, sigma: f64, t: f64) -> f64 {
    if sigma <= 0.0 {
        return if mean.abs() < t { 1.0 } else { 0.0 };
    }
    let z = |v: f64| 0.5 * (1.0 + statrs::function::erf::erf((v - mean) / (sigma * std::f64::consts::SQRT_2)));
    z(t) - z(-t)
}
