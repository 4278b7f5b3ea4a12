//! Polynomial and trigonometric evaluation on the unit circle.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Values `P(e^(2πi j / G))` for `j = 0..G`, returned as `(re, im)` pairs.
///
/// One sine/cosine pair per grid point; coefficients enter through a Horner
/// recurrence in the rotated variable, so the error stays below
/// `~degree * eps * sum |coeffs|`.
pub fn evaluate_on_circle<S: Scalar>(coeffs: &[S], grid_points: usize) -> Result<Vec<(S, S)>> {
    if coeffs.is_empty() {
        return Err(Error::invalid("empty coefficient sequence"));
    }
    if grid_points < coeffs.len() {
        return Err(Error::invalid(format!(
            "grid of {grid_points} points cannot resolve degree {}",
            coeffs.len() - 1
        )));
    }
    let mut out = Vec::with_capacity(grid_points);
    for j in 0..grid_points {
        let theta = S::tau() * S::from_f64c(j as f64) / S::from_f64c(grid_points as f64);
        let (wr, wi) = (theta.cos(), theta.sin());
        // Horner: value = c0 + w (c1 + w (c2 + ...)).
        let (mut re, mut im) = (S::zero(), S::zero());
        for &c in coeffs.iter().rev() {
            let nr = re * wr - im * wi + c;
            let ni = re * wi + im * wr;
            re = nr;
            im = ni;
        }
        out.push((re, im));
    }
    Ok(out)
}

/// Grid mean of `|P|^2`; equals `sum |c_k|^2` whenever `grid_points > degree`.
pub fn parseval_mean<S: Scalar>(coeffs: &[S], grid_points: usize) -> Result<S> {
    let vals = evaluate_on_circle(coeffs, grid_points)?;
    let sum: S = vals.iter().map(|&(r, i)| r * r + i * i).sum();
    Ok(sum / S::from_f64c(grid_points as f64))
}

/// Sparse trigonometric polynomial `x -> sum_k a_k trig(k x)` with explicit
/// frequencies; `cos` when `cosine` is true, else `sin`.
#[derive(Debug, Clone)]
pub struct TrigPoly {
    pub freqs: Vec<u32>,
    pub amps: Vec<f64>,
    pub cosine: bool,
}

impl TrigPoly {
    pub fn cosine(freqs: Vec<u32>, amps: Vec<f64>) -> Self {
        assert_eq!(freqs.len(), amps.len());
        TrigPoly { freqs, amps, cosine: true }
    }

    pub fn sine(freqs: Vec<u32>, amps: Vec<f64>) -> Self {
        assert_eq!(freqs.len(), amps.len());
        TrigPoly { freqs, amps, cosine: false }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (&k, &a) in self.freqs.iter().zip(&self.amps) {
            let kx = f64::from(k) * x;
            acc += a * if self.cosine { kx.cos() } else { kx.sin() };
        }
        acc
    }

    /// Evaluate on the uniform grid `x_j = 2π j / grid_points` using per-point
    /// incremental rotation over the frequency range (one trig pair per point).
    pub fn eval_grid(&self, grid_points: usize) -> Vec<f64> {
        let kmax = self.freqs.iter().copied().max().unwrap_or(0) as usize;
        let mut amp_by_k = vec![0.0f64; kmax + 1];
        for (&k, &a) in self.freqs.iter().zip(&self.amps) {
            amp_by_k[k as usize] += a;
        }
        (0..grid_points)
            .map(|j| {
                let theta = std::f64::consts::TAU * j as f64 / grid_points as f64;
                let (wr, wi) = (theta.cos(), theta.sin());
                // Rotate e^{ikθ} upward from k = 0.
                let (mut zr, mut zi) = (1.0f64, 0.0f64);
                let mut acc = 0.0;
                for &a in amp_by_k.iter() {
                    if a != 0.0 {
                        acc += a * if self.cosine { zr } else { zi };
                    }
                    let nr = zr * wr - zi * wi;
                    zi = zr * wi + zi * wr;
                    zr = nr;
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_plus_z_at_one() {
        let vals = evaluate_on_circle(&[1.0f64, 1.0], 8).unwrap();
        assert!((vals[0].0 - 2.0).abs() < 1e-12);
        assert!(vals[0].1.abs() < 1e-12);
    }

    #[test]
    fn rs_t2_p_part_at_one() {
        let vals = evaluate_on_circle(&[1.0f64, 1.0, 1.0, -1.0], 16).unwrap();
        assert!((vals[0].0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn parseval_on_sign_sequences() {
        use rand::Rng;
        let mut rng = crate::rng::rng_from_seed(3);
        for len in [4usize, 9, 33] {
            let coeffs: Vec<f64> =
                (0..len).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
            let mean = parseval_mean(&coeffs, 8 * len).unwrap();
            assert!(
                (mean - len as f64).abs() / len as f64 <= 1e-6,
                "len {len} mean {mean}"
            );
        }
    }

    #[test]
    fn rejects_empty_and_coarse_grids() {
        assert!(evaluate_on_circle::<f64>(&[], 4).is_err());
        assert!(evaluate_on_circle(&[1.0f64, 1.0], 1).is_err());
    }

    #[test]
    fn grid_eval_matches_pointwise() {
        let tp = TrigPoly::sine(vec![1, 5, 12], vec![0.5, -1.0, 2.0]);
        let grid = tp.eval_grid(64);
        for (j, &g) in grid.iter().enumerate() {
            let x = std::f64::consts::TAU * j as f64 / 64.0;
            assert!((g - tp.eval(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn works_in_f32_too() {
        let vals = evaluate_on_circle(&[1.0f32, -1.0], 4).unwrap();
        assert!((vals[2].0 - 2.0).abs() < 1e-5); // at z = -1: 1 - (-1)
    }
}
