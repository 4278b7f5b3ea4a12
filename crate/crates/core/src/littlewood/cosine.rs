//! Twisted Rudin–Shapiro cosine part.

use super::eval::TrigPoly;
use super::rudin_shapiro::rudin_shapiro;
use crate::error::{Error, Result};

/// Cosine part `c(x) = Re(z^T P_t(z) + z^{2T} Q_t(z))` with `T = 2^t`,
/// `t = floor(log2(gamma n))`: frequencies `[T, 3T - 1]`, coefficients from
/// the Rudin–Shapiro pair.
#[derive(Debug, Clone)]
pub struct CosinePart {
    pub t: u32,
    pub big_t: u32,
    /// Frequencies `T .. 3T - 1` in order.
    pub freqs: Vec<u32>,
    /// ±1 coefficient per frequency.
    pub coeffs: Vec<i8>,
    /// Guaranteed sup bound `sqrt(2 * 2^(t+1))` from the RS identity.
    pub sup_bound: f64,
}

impl CosinePart {
    /// Evaluation handle, optionally with a constant shift added (the
    /// assembly shifts by `eps0 / 2` so runs of small `|c + 1/2|` mark where
    /// the full real part `eps0 + 2c` is small).
    pub fn handle(&self, shift: f64) -> ShiftedCosine {
        ShiftedCosine {
            poly: TrigPoly::cosine(
                self.freqs.clone(),
                self.coeffs.iter().map(|&c| f64::from(c)).collect(),
            ),
            shift,
        }
    }
}

/// `x -> c(x) + shift`.
#[derive(Debug, Clone)]
pub struct ShiftedCosine {
    pub poly: TrigPoly,
    pub shift: f64,
}

impl ShiftedCosine {
    pub fn eval(&self, x: f64) -> f64 {
        self.poly.eval(x) + self.shift
    }

    pub fn eval_grid(&self, grid_points: usize) -> Vec<f64> {
        let mut v = self.poly.eval_grid(grid_points);
        for vi in v.iter_mut() {
            *vi += self.shift;
        }
        v
    }
}

/// Build the cosine part for quarter-degree `n` and density `gamma`.
/// Requires `gamma * n >= 8` so the Rudin–Shapiro level is at least 3.
pub fn build_cosine_part(n: usize, gamma: f64) -> Result<CosinePart> {
    if !(0.0..=0.125).contains(&gamma) || gamma <= 0.0 {
        return Err(Error::invalid("gamma must lie in (0, 1/8]"));
    }
    let gn = gamma * n as f64;
    if gn < 8.0 {
        return Err(Error::invalid(format!("gamma * n = {gn} < 8")));
    }
    let t = gn.log2().floor() as u32;
    let big_t = 1u32 << t;
    if 3 * big_t - 1 > 2 * n as u32 {
        return Err(Error::invalid("frequency block exceeds 2n"));
    }
    let rs = rudin_shapiro(t)?;
    let freqs: Vec<u32> = (big_t..3 * big_t).collect();
    let mut coeffs = rs.p.clone();
    coeffs.extend(rs.q.iter().copied());
    let sup_bound = (2.0 * f64::powi(2.0, t as i32 + 1)).sqrt();
    Ok(CosinePart { t, big_t, freqs, coeffs, sup_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_arithmetic() {
        let c = build_cosine_part(256, 1.0 / 16.0).unwrap();
        assert_eq!(c.t, 4);
        assert_eq!(c.big_t, 16);
        assert_eq!(c.freqs.first(), Some(&16));
        assert_eq!(c.freqs.last(), Some(&47));
        assert_eq!(c.freqs.len(), 32);
    }

    #[test]
    fn value_at_zero_is_rs_sum() {
        // Twisting by z^T does not move the value at x = 0: c(0) = P_t(1) + Q_t(1).
        // At t = 2 (blocks [4,7] and [8,11]) that is 2 + 2 = 4.
        let rs = rudin_shapiro(2).unwrap();
        let freqs: Vec<u32> = (4..12).collect();
        let mut coeffs: Vec<f64> = rs.p.iter().map(|&c| f64::from(c)).collect();
        coeffs.extend(rs.q.iter().map(|&c| f64::from(c)));
        let c2 = TrigPoly::cosine(freqs, coeffs);
        assert!((c2.eval(0.0) - 4.0).abs() < 1e-12);

        // And through the builder: t = 4 gives P_4(1) + Q_4(1) = 4 + 4.
        let c = build_cosine_part(256, 1.0 / 16.0).unwrap();
        assert_eq!(c.t, 4);
        assert!((c.handle(0.0).eval(0.0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn sup_bound_holds_on_grid() {
        // t = 8 requires gamma * n in [256, 512).
        let c = build_cosine_part(4096, 1.0 / 16.0).unwrap();
        assert_eq!(c.t, 8);
        let grid = c.handle(0.0).eval_grid(4096);
        let sup = grid.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        assert!(sup <= 32.0 + 1e-9, "sup {sup}");
        assert!(sup <= c.sup_bound + 1e-9);
    }

    #[test]
    fn small_products_rejected() {
        assert!(build_cosine_part(63, 1.0 / 16.0).is_err());
        assert!(build_cosine_part(256, 0.5).is_err());
    }
}
