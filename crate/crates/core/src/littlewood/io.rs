//! Coefficient export formats.

use super::LittlewoodPoly;
use serde::{Deserialize, Serialize};

/// JSON export `{n, gamma, delta, seed, coeffs}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyRecord {
    pub n: usize,
    pub gamma: f64,
    pub delta: f64,
    pub seed: u64,
    /// Degree-4n coefficients, low to high.
    pub coeffs: Vec<i8>,
}

impl PolyRecord {
    pub fn new(poly: &LittlewoodPoly, delta: f64, seed: u64) -> Self {
        PolyRecord {
            n: poly.n,
            gamma: poly.gamma,
            delta,
            seed,
            coeffs: poly.coeffs().to_vec(),
        }
    }
}

/// One signed integer per line, low to high.
pub fn coeffs_as_text(poly: &LittlewoodPoly) -> String {
    let mut out = String::with_capacity(3 * poly.coeffs().len());
    for &c in poly.coeffs() {
        out.push_str(if c > 0 { "1" } else { "-1" });
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip_shape() {
        let p = LittlewoodPoly::from_parts(2, 0.25, 1, vec![1, 3], &[1, -1], vec![2, 4], &[-1, 1])
            .unwrap();
        let text = coeffs_as_text(&p);
        assert_eq!(text.lines().count(), 9);
        assert!(text.lines().all(|l| l == "1" || l == "-1"));
    }
}
