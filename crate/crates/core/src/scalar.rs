//! Scalar abstraction for the numeric kernels.
//!
//! The low-level kernels (trigonometric evaluation, quadrature, vector
//! geometry) are generic over [`Scalar`] so they can run in `f32` or `f64`;
//! the pipelines fix [`crate::Real`].

use num_traits::{Float, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + NumAssign + Sum + Debug + Display + Copy {
    /// Lossless-enough conversion from `f64` for constants and tolerances.
    fn from_f64c(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant conversion")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    fn pi() -> Self {
        Self::from_f64c(std::f64::consts::PI)
    }

    fn tau() -> Self {
        Self::from_f64c(std::f64::consts::TAU)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Euclidean norm.
pub fn norm2<S: Scalar>(v: &[S]) -> S {
    v.iter().map(|&x| x * x).sum::<S>().sqrt()
}

/// Dot product.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Squared Euclidean distance between points.
pub fn dist2_sq<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum()
}

/// Max-norm of a vector.
pub fn norm_inf<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::zero(), |m, &x| m.max(x.abs()))
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to relative tolerance `rel_tol`.
///
/// The recursion bottoms out at depth 60; that is far below machine precision
/// for the smooth integrands used here.
pub fn adaptive_simpson<S: Scalar>(f: impl Fn(S) -> S + Copy, a: S, b: S, rel_tol: S) -> S {
    fn simpson<S: Scalar>(f: impl Fn(S) -> S + Copy, a: S, fa: S, b: S, fb: S) -> (S, S, S) {
        let m = (a + b) * S::half();
        let fm = f(m);
        let six = S::from_f64c(6.0);
        ((b - a) / six * (fa + S::from_f64c(4.0) * fm + fb), m, fm)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec<S: Scalar>(
        f: impl Fn(S) -> S + Copy,
        a: S,
        fa: S,
        b: S,
        fb: S,
        whole: S,
        m: S,
        fm: S,
        eps: S,
        depth: u32,
    ) -> S {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= S::from_f64c(15.0) * eps {
            left + right + delta / S::from_f64c(15.0)
        } else {
            let half_eps = eps * S::half();
            rec(f, a, fa, m, fm, left, lm, flm, half_eps, depth - 1)
                + rec(f, m, fm, b, fb, right, rm, frm, half_eps, depth - 1)
        }
    }

    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    // Seed the absolute tolerance from a coarse magnitude estimate.
    let scale = whole.abs().max(S::from_f64c(1e-300));
    rec(f, a, fa, b, fb, whole, m, fm, rel_tol * scale, 60)
}

/// Median of a slice (averages the middle pair for even lengths).
pub fn median<S: Scalar>(values: &[S]) -> S {
    assert!(!values.is_empty(), "median of empty slice");
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("NaN in median"));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) * S::half()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_sine_exactly_enough() {
        let v: f64 = adaptive_simpson(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn simpson_works_in_f32() {
        let v: f32 = adaptive_simpson(|x: f32| x * x, 0.0, 1.0, 1e-5);
        assert!((v - 1.0 / 3.0).abs() < 1e-5);
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
