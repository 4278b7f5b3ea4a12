//! Random-coloring baseline for `max_j |(Ax)_j|`.

use super::ConstraintSystem;
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::scalar::{median, Scalar};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BaselineSummary {
    pub trials: u32,
    pub median_inf_norm: f64,
    pub max_inf_norm: f64,
}

/// Draw `trials` uniform sign vectors and summarize `max_j |(Ax)_j|`.
///
/// Deterministic given the seed. The max-row-sum norm is the one a uniformly
/// random coloring keeps at `Θ(sqrt(n log m))`; this is the yardstick the
/// constructive colorings have to beat.
pub fn random_coloring_baseline<S: Scalar>(
    system: &ConstraintSystem<S>,
    trials: u32,
    rng_seed: u64,
) -> Result<BaselineSummary> {
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    if !system.is_spencer_normalized() {
        return Err(Error::invalid("baseline requires a Spencer-normalized system"));
    }
    let n = system.dim();
    let mut rng = rng_from_seed(rng_seed);
    let mut norms = Vec::with_capacity(trials as usize);
    let mut x = vec![S::zero(); n];
    for _ in 0..trials {
        for xi in x.iter_mut() {
            *xi = if rng.gen::<bool>() { S::one() } else { -S::one() };
        }
        norms.push(
            system
                .inf_norm_image(&x)
                .to_f64()
                .expect("norm fits f64"),
        );
    }
    let max = norms.iter().copied().fold(0.0f64, f64::max);
    Ok(BaselineSummary { trials, median_inf_norm: median(&norms), max_inf_norm: max })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_has_zero_median() {
        let sys = ConstraintSystem::<f64>::uniform(vec![vec![0.0]], 1.0).unwrap();
        let s = random_coloring_baseline(&sys, 10, 1).unwrap();
        assert_eq!(s.median_inf_norm, 0.0);
        assert_eq!(s.max_inf_norm, 0.0);
    }

    #[test]
    fn identity_has_unit_norm() {
        let n = 5;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let sys = ConstraintSystem::uniform(rows, 1.0).unwrap();
        let s = random_coloring_baseline(&sys, 20, 7).unwrap();
        assert_eq!(s.median_inf_norm, 1.0);
        assert_eq!(s.max_inf_norm, 1.0);
    }

    #[test]
    fn all_ones_matrix_behaves_like_simple_random_walk() {
        // One row of 64 ones repeated: |sum of 64 random signs| has median
        // near sqrt(64) = 8; the exact binomial puts the median of |S_64|
        // in [4, 16] comfortably.
        let rows = vec![vec![1.0f64; 64]; 64];
        let sys = ConstraintSystem::uniform(rows, 1.0).unwrap();
        let s = random_coloring_baseline(&sys, 200, 3).unwrap();
        assert!(s.median_inf_norm >= 4.0 && s.median_inf_norm <= 16.0, "{s:?}");
    }

    #[test]
    fn zero_trials_rejected() {
        let sys = ConstraintSystem::<f64>::uniform(vec![vec![0.0]], 1.0).unwrap();
        assert!(random_coloring_baseline(&sys, 0, 1).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let rows = vec![vec![1.0f64, -1.0, 0.5]; 4];
        let sys = ConstraintSystem::uniform(rows, 1.0).unwrap();
        let a = random_coloring_baseline(&sys, 50, 11).unwrap();
        let b = random_coloring_baseline(&sys, 50, 11).unwrap();
        assert_eq!(a.median_inf_norm, b.median_inf_norm);
        assert_eq!(a.max_inf_norm, b.max_inf_norm);
    }
}
