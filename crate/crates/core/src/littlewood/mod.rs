//! Flat polynomials with ±1 coefficients.
//!
//! The construction works on the centered exponential form
//! `f(x) = e0 + 2 sum_C eps_k cos kx + 2i sum_S eps_k sin kx` of a degree-4n
//! polynomial: a deterministic twisted Rudin–Shapiro cosine part keeps the
//! real part large except on a sparse set of short "bad intervals"; the sine
//! part is then biased and partially-colored so it is large on exactly those
//! intervals while staying `O(sqrt n)` everywhere.

mod assemble;
mod cosine;
mod eval;
mod intervals;
pub mod io;
mod push;
mod rudin_shapiro;
mod sine;

pub use assemble::{assemble_flat_littlewood, flatness_report, FlatnessReport};
pub use cosine::{build_cosine_part, CosinePart};
pub use eval::{evaluate_on_circle, parseval_mean, TrigPoly};
pub use intervals::{
    detect_bad_intervals, detect_bad_intervals_from_grid, BadIntervalSet, Interval, IntervalLimits,
};
pub use push::{choose_interval_signs, compute_push_deltas, PushPlan};
pub use rudin_shapiro::{rudin_shapiro, RudinShapiroPair};
pub use sine::build_sine_part;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Tuning constants for the pipeline. Defaults are calibrated so the
/// `n = 256..1024`, `gamma = 1/32` instances meet the flatness targets.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FlatConfig {
    /// Validation constant K1: at most `K1 * gamma * n` bad intervals.
    pub k1_count: f64,
    /// Validation constant K2: each interval no longer than `K2 / n`.
    pub k2_length: f64,
    /// Validation constant K3: gaps no shorter than `K3 / n`.
    pub k3_gap: f64,
    /// Push-bound constant: `|Delta(k)| <= c_push * sqrt(gamma n)` must hold
    /// after sign selection.
    pub c_push: f64,
    /// Global sine bound for stage (a), in units of sqrt(n).
    pub sine_sup_frac: f64,
    /// Flatness targets in units of sqrt(degree + 1).
    pub min_abs_frac: f64,
    pub max_abs_frac: f64,
    /// Grid multipliers (relative to n) for interval detection and sine
    /// validation.
    pub detect_grid_mult: usize,
    pub validate_grid_mult: usize,
    /// Retry budget for the randomized stages and the whole pipeline.
    pub stage_retries: u32,
    pub pipeline_retries: u32,
}

impl Default for FlatConfig {
    fn default() -> Self {
        FlatConfig {
            k1_count: 4.0,
            k2_length: 64.0,
            k3_gap: 1.0 / 64.0,
            c_push: 4.5,
            sine_sup_frac: 9.5,
            min_abs_frac: 0.02,
            max_abs_frac: 10.0,
            detect_grid_mult: 32,
            validate_grid_mult: 128,
            stage_retries: 8,
            pipeline_retries: 10,
        }
    }
}

/// A ±1 coefficient sequence `eps_{-2n} .. eps_{2n}` with its frequency
/// partition `C ∪ S = [1, 2n]` and the symmetry `eps_{-k} = eps_k` on `C`,
/// `eps_{-k} = -eps_k` on `S`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LittlewoodPoly {
    /// Centered coefficients, length `4n + 1`; index `i` holds `eps_{i - 2n}`.
    coeffs: Vec<i8>,
    /// Cosine-symmetric frequencies.
    pub c_freqs: Vec<u32>,
    /// Sine-antisymmetric frequencies.
    pub s_freqs: Vec<u32>,
    pub gamma: f64,
    /// Quarter-degree: the polynomial has degree `4n`.
    pub n: usize,
}

impl LittlewoodPoly {
    /// Assemble from the constant term and one coefficient per positive
    /// frequency, imposing the C/S symmetry. Verifies the partition and the
    /// Parseval invariant.
    pub fn from_parts(
        n: usize,
        gamma: f64,
        eps0: i8,
        c_freqs: Vec<u32>,
        c_coeffs: &[i8],
        s_freqs: Vec<u32>,
        s_coeffs: &[i8],
    ) -> Result<Self> {
        let two_n = 2 * n as u32;
        let mut covered = vec![false; 2 * n + 1];
        for &k in c_freqs.iter().chain(&s_freqs) {
            if k == 0 || k > two_n {
                return Err(Error::invalid(format!("frequency {k} outside [1, 2n]")));
            }
            if covered[k as usize] {
                return Err(Error::invalid(format!("frequency {k} assigned twice")));
            }
            covered[k as usize] = true;
        }
        if !covered[1..].iter().all(|&c| c) {
            return Err(Error::invalid("C and S must partition [1, 2n]"));
        }
        if c_freqs.len() != c_coeffs.len() || s_freqs.len() != s_coeffs.len() {
            return Err(Error::invalid("coefficient count mismatch"));
        }
        let mut coeffs = vec![0i8; 4 * n + 1];
        coeffs[2 * n] = eps0;
        for (&k, &e) in c_freqs.iter().zip(c_coeffs) {
            coeffs[2 * n + k as usize] = e;
            coeffs[2 * n - k as usize] = e;
        }
        for (&k, &e) in s_freqs.iter().zip(s_coeffs) {
            coeffs[2 * n + k as usize] = e;
            coeffs[2 * n - k as usize] = -e;
        }
        let poly = LittlewoodPoly { coeffs, c_freqs, s_freqs, gamma, n };
        poly.check_invariants()?;
        Ok(poly)
    }

    fn check_invariants(&self) -> Result<()> {
        if self.coeffs.iter().any(|&c| c != 1 && c != -1) {
            return Err(Error::invalid("all coefficients must be ±1"));
        }
        let len = self.coeffs.len();
        let mean = parseval_mean(&self.as_f64_coeffs(), 8 * len)?;
        let rel = (mean - len as f64).abs() / len as f64;
        if rel > 1e-6 {
            return Err(Error::validation(
                "Parseval mean off",
                vec![("relative_error".into(), rel)],
            ));
        }
        Ok(())
    }

    /// Degree-4n coefficients `a_j = eps_{j - 2n}`, low to high.
    pub fn coeffs(&self) -> &[i8] {
        &self.coeffs
    }

    pub fn as_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|&c| f64::from(c)).collect()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Centered coefficient `eps_k` for `|k| <= 2n`.
    pub fn eps(&self, k: i64) -> i8 {
        self.coeffs[(k + 2 * self.n as i64) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_and_symmetry_enforced() {
        // n = 2: frequencies 1..4.
        let p = LittlewoodPoly::from_parts(
            2,
            0.25,
            1,
            vec![1, 3],
            &[1, -1],
            vec![2, 4],
            &[-1, 1],
        )
        .unwrap();
        assert_eq!(p.eps(1), p.eps(-1));
        assert_eq!(p.eps(3), p.eps(-3));
        assert_eq!(p.eps(2), -p.eps(-2));
        assert_eq!(p.degree(), 8);
        // Missing frequency rejected.
        assert!(LittlewoodPoly::from_parts(2, 0.25, 1, vec![1], &[1], vec![2, 4], &[1, 1])
            .is_err());
    }
}
