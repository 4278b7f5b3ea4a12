//! Discrepancy-minimizing sign assignments.
//!
//! The pieces fit together like this: [`ConstraintSystem`] holds linear
//! functionals with per-row deviation budgets; [`lovett_meka_partial_coloring`]
//! runs a constrained random walk that freezes a quarter of the coordinates;
//! [`spencer_coloring`] iterates that walk to a full ±1 vector; and
//! [`exhaustive_partial_coloring_oracle`] brute-forces small instances for
//! ground truth. [`beck_fiala`] covers the bounded-degree hypergraph case and
//! [`ap_discrepancy`] evaluates colorings along arithmetic progressions.

mod ap;
mod baseline;
mod beck_fiala;
pub mod io;
mod oracle;
mod spencer;
mod walk;

pub use ap::{ap_discrepancy, ap_discrepancy_report, ApDiscrepancyReport};
pub use baseline::{random_coloring_baseline, BaselineSummary};
pub use beck_fiala::beck_fiala;
pub use oracle::exhaustive_partial_coloring_oracle;
pub use spencer::{spencer_coloring, SpencerOutcome, SpencerParams};
pub use walk::{lovett_meka_partial_coloring, WalkParams};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Rows of linear functionals `a(j)` with per-row deviation budgets `c_j`,
/// in units of sqrt(n).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintSystem<S: Scalar> {
    rows: Vec<Vec<S>>,
    budgets: Vec<S>,
    dim: usize,
    spencer_normalized: bool,
}

impl<S: Scalar> ConstraintSystem<S> {
    /// Build a system from rows of common length and matching budgets.
    pub fn new(rows: Vec<Vec<S>>, budgets: Vec<S>) -> Result<Self> {
        let dim = match rows.first() {
            Some(r) => r.len(),
            None => {
                return Err(Error::invalid(
                    "constraint system needs the dimension; use `empty(n)` for m = 0",
                ))
            }
        };
        Self::with_dim(dim, rows, budgets)
    }

    /// Build a system with an explicit dimension (required when `m = 0`).
    pub fn with_dim(dim: usize, rows: Vec<Vec<S>>, budgets: Vec<S>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if rows.len() != budgets.len() {
            return Err(Error::invalid(format!(
                "{} rows but {} budgets",
                rows.len(),
                budgets.len()
            )));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("all rows must have identical length"));
        }
        if budgets.iter().any(|c| *c < S::zero() || !c.is_finite()) {
            return Err(Error::invalid("budgets must be non-negative and finite"));
        }
        let spencer_normalized = rows
            .iter()
            .all(|r| r.iter().all(|a| a.abs() <= S::one()));
        Ok(ConstraintSystem { rows, budgets, dim, spencer_normalized })
    }

    /// System with no rows over dimension `n`.
    pub fn empty(n: usize) -> Self {
        ConstraintSystem { rows: vec![], budgets: vec![], dim: n, spencer_normalized: true }
    }

    /// Uniform budgets over given rows.
    pub fn uniform(rows: Vec<Vec<S>>, budget: S) -> Result<Self> {
        let budgets = vec![budget; rows.len()];
        Self::new(rows, budgets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn budgets(&self) -> &[S] {
        &self.budgets
    }

    /// True when every entry satisfies |a_ij| <= 1.
    pub fn is_spencer_normalized(&self) -> bool {
        self.spencer_normalized
    }

    /// `A x` for a dense vector.
    pub fn apply(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.dim);
        self.rows.iter().map(|r| crate::scalar::dot(r, x)).collect()
    }

    /// `max_j |(A x)_j|`; zero when there are no rows.
    pub fn inf_norm_image(&self, x: &[S]) -> S {
        self.rows
            .iter()
            .map(|r| crate::scalar::dot(r, x).abs())
            .fold(S::zero(), S::max)
    }

    /// Spectral gate `sum_j exp(-c_j^2 / 16) <= 1/16` required by the
    /// partial-coloring walk.
    pub fn budget_gate_value(&self) -> S {
        self.budgets
            .iter()
            .map(|&c| (-(c * c) / S::from_f64c(16.0)).exp())
            .sum()
    }
}

/// Vector in `[-1,1]^n` with a set of frozen coordinates at exactly ±1.
///
/// The frozen set only ever grows; freezing snaps the value to ±1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialColoring<S: Scalar> {
    values: Vec<S>,
    frozen: Vec<bool>,
}

/// Tolerance for the |x_i| = 1 frozen-coordinate invariant.
pub const FROZEN_TOL: f64 = 1e-12;

impl<S: Scalar> PartialColoring<S> {
    /// All-zero coloring with nothing frozen.
    pub fn zero(n: usize) -> Self {
        PartialColoring { values: vec![S::zero(); n], frozen: vec![false; n] }
    }

    /// Start from arbitrary values in `[-1,1]`; coordinates within
    /// [`FROZEN_TOL`] of ±1 are frozen immediately.
    pub fn from_values(values: Vec<S>) -> Result<Self> {
        let tol = S::from_f64c(FROZEN_TOL);
        if values.iter().any(|v| v.abs() > S::one() + tol || !v.is_finite()) {
            return Err(Error::invalid("partial coloring entries must lie in [-1,1]"));
        }
        let mut pc = PartialColoring { frozen: vec![false; values.len()], values };
        for i in 0..pc.values.len() {
            if (pc.values[i].abs() - S::one()).abs() <= tol {
                pc.freeze(i);
            }
        }
        Ok(pc)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn frozen_count(&self) -> usize {
        self.frozen.iter().filter(|&&f| f).count()
    }

    pub fn free_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.frozen[i]).collect()
    }

    /// Snap coordinate `i` to the sign of its current value (0 snaps to +1)
    /// and mark it frozen.
    pub fn freeze(&mut self, i: usize) {
        self.values[i] = if self.values[i] < S::zero() { -S::one() } else { S::one() };
        self.frozen[i] = true;
    }

    /// Set an unfrozen coordinate.
    pub fn set(&mut self, i: usize, v: S) {
        debug_assert!(!self.frozen[i], "cannot move a frozen coordinate");
        self.values[i] = v;
    }

    /// Fully frozen ±1 content, if every coordinate is frozen.
    pub fn as_signs(&self) -> Option<SignedColoring> {
        if self.frozen.iter().all(|&f| f) {
            Some(SignedColoring::new(
                self.values
                    .iter()
                    .map(|&v| if v < S::zero() { -1 } else { 1 })
                    .collect(),
            ))
        } else {
            None
        }
    }
}

/// Full ±1 assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedColoring {
    signs: Vec<i8>,
}

impl SignedColoring {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "entries must be ±1");
        SignedColoring { signs }
    }

    pub fn constant(n: usize, sign: i8) -> Self {
        Self::new(vec![sign; n])
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn get(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn to_scalars<S: Scalar>(&self) -> Vec<S> {
        self.signs
            .iter()
            .map(|&s| if s > 0 { S::one() } else { -S::one() })
            .collect()
    }
}

/// Hypergraph over ground set `{0, .., n-1}` with cached maximum degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    max_degree: usize,
}

impl Hypergraph {
    /// Edges as 0-based vertex index sets over `[0, n)`. Duplicate vertices
    /// within an edge are rejected.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ground set must be non-empty"));
        }
        let mut degree = vec![0usize; n];
        for e in &edges {
            let mut seen = vec![false; n];
            for &v in e {
                if v >= n {
                    return Err(Error::invalid(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::invalid("duplicate vertex within an edge"));
                }
                seen[v] = true;
                degree[v] += 1;
            }
        }
        let max_degree = degree.into_iter().max().unwrap_or(0);
        Ok(Hypergraph { n, edges, max_degree })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Signed sum over an edge.
    pub fn edge_sum(&self, edge: usize, f: &SignedColoring) -> i64 {
        self.edges[edge].iter().map(|&v| i64::from(f.get(v))).sum()
    }

    /// `max_e |sum_{x in e} f(x)|`.
    pub fn discrepancy(&self, f: &SignedColoring) -> i64 {
        (0..self.edges.len())
            .map(|e| self.edge_sum(e, f).abs())
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_system_shape_checks() {
        assert!(ConstraintSystem::<f64>::new(vec![vec![1.0, 0.5]], vec![1.0]).is_ok());
        assert!(ConstraintSystem::<f64>::new(vec![vec![1.0], vec![1.0, 2.0]], vec![1.0, 1.0])
            .is_err());
        assert!(ConstraintSystem::<f64>::new(vec![vec![1.0]], vec![]).is_err());
        let sys = ConstraintSystem::<f64>::new(vec![vec![2.0, 0.0]], vec![1.0]).unwrap();
        assert!(!sys.is_spencer_normalized());
    }

    #[test]
    fn gate_value_matches_formula() {
        let sys = ConstraintSystem::<f64>::uniform(vec![vec![1.0; 4]; 3], 4.0).unwrap();
        let expect = 3.0 * (-1.0f64).exp();
        assert!((sys.budget_gate_value() - expect).abs() < 1e-12);
    }

    #[test]
    fn freezing_snaps_and_counts() {
        let mut pc = PartialColoring::<f64>::zero(4);
        pc.set(1, -0.4);
        pc.freeze(1);
        assert_eq!(pc.values()[1], -1.0);
        assert_eq!(pc.frozen_count(), 1);
        let pc2 = PartialColoring::from_values(vec![1.0, 0.2, -1.0]).unwrap();
        assert_eq!(pc2.frozen_count(), 2);
        assert!(PartialColoring::from_values(vec![1.5]).is_err());
    }

    #[test]
    fn hypergraph_degree_cache() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![0]]).unwrap();
        assert_eq!(h.max_degree(), 3);
        let f = SignedColoring::new(vec![1, -1, 1]);
        assert_eq!(h.discrepancy(&f), 2);
    }
}
