//! Rudin–Shapiro polynomial pairs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Pair `(P_t, Q_t)` of ±1 coefficient sequences of length `2^t` satisfying
/// `|P_t(z)|^2 + |Q_t(z)|^2 = 2^(t+1)` on the unit circle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RudinShapiroPair {
    pub p: Vec<i8>,
    pub q: Vec<i8>,
    pub level: u32,
}

/// Unroll the recursion `P_{t+1} = P_t + z^{2^t} Q_t`, `Q_{t+1} = P_t - z^{2^t} Q_t`
/// from `P_0 = Q_0 = 1`.
pub fn rudin_shapiro(t: u32) -> Result<RudinShapiroPair> {
    if t > 24 {
        return Err(Error::SizeLimit(format!("2^{t} coefficients exceeds the cap (t <= 24)")));
    }
    let mut p: Vec<i8> = vec![1];
    let mut q: Vec<i8> = vec![1];
    for _ in 0..t {
        let mut np = p.clone();
        np.extend(q.iter().copied());
        let mut nq = p;
        nq.extend(q.iter().map(|&c| -c));
        p = np;
        q = nq;
    }
    Ok(RudinShapiroPair { p, q, level: t })
}

impl RudinShapiroPair {
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Max over a grid of `| |P|^2 + |Q|^2 - 2^(t+1) | / 2^(t+1)`.
    pub fn identity_defect(&self, grid_points: usize) -> f64 {
        let target = f64::powi(2.0, self.level as i32 + 1);
        let pc: Vec<f64> = self.p.iter().map(|&c| f64::from(c)).collect();
        let qc: Vec<f64> = self.q.iter().map(|&c| f64::from(c)).collect();
        let pv = super::eval::evaluate_on_circle(&pc, grid_points).expect("non-empty");
        let qv = super::eval::evaluate_on_circle(&qc, grid_points).expect("non-empty");
        pv.iter()
            .zip(&qv)
            .map(|(a, b)| {
                let s = a.0 * a.0 + a.1 * a.1 + b.0 * b.0 + b.1 * b.1;
                (s - target).abs() / target
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case() {
        let rs = rudin_shapiro(0).unwrap();
        assert_eq!(rs.p, vec![1]);
        assert_eq!(rs.q, vec![1]);
    }

    #[test]
    fn one_unrolling() {
        let rs = rudin_shapiro(1).unwrap();
        assert_eq!(rs.p, vec![1, 1]);
        assert_eq!(rs.q, vec![1, -1]);
    }

    #[test]
    fn two_unrollings_and_value_at_one() {
        let rs = rudin_shapiro(2).unwrap();
        assert_eq!(rs.p, vec![1, 1, 1, -1]);
        let p1: i32 = rs.p.iter().map(|&c| i32::from(c)).sum();
        let q1: i32 = rs.q.iter().map(|&c| i32::from(c)).sum();
        assert_eq!(p1 * p1 + q1 * q1, 8);
    }

    #[test]
    fn identity_holds_on_grid() {
        for t in 0..=8 {
            let rs = rudin_shapiro(t).unwrap();
            assert!(rs.identity_defect(512) <= 1e-9, "t = {t}");
        }
    }

    #[test]
    fn size_cap() {
        assert!(rudin_shapiro(25).is_err());
    }
}
