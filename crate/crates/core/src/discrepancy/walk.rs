//! Constrained random-walk partial coloring.
//!
//! The walk starts at `x0`, takes Gaussian steps projected onto the
//! orthogonal complement of every hyperplane it has stuck to (cube faces
//! `|x_i| = 1` and constraint slabs `|<x - x0, a(j)>| = c_j sqrt(n)`), and
//! clips each step at the first boundary it would cross. Clipping plus
//! projection make postcondition (a) hold exactly: no functional ever leaves
//! its slab.

use super::{ConstraintSystem, PartialColoring};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy)]
pub struct WalkParams {
    /// Per-coordinate standard deviation of one discrete step.
    /// `None` picks the default `1 / (8 sqrt(n))`.
    pub step_size: Option<f64>,
    /// Total walk time; one step advances time by `step_size^2`.
    pub max_time: f64,
    /// Distance at which a nearly-touched hyperplane sticks.
    /// `None` picks `step_size / 4`.
    pub stick_tol: Option<f64>,
    /// Stop as soon as a quarter of the coordinates are frozen instead of
    /// running out the clock. Used by the iterated colorings, where excess
    /// diffusion only adds deviation.
    pub early_exit: bool,
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams { step_size: None, max_time: 4.0, stick_tol: None, early_exit: false }
    }
}

/// Minimum frozen coordinates the walk must deliver.
pub fn freeze_target(n: usize) -> usize {
    n.div_ceil(4)
}

/// Run the walk. Returns a partial coloring with every slab constraint
/// satisfied and at least `n/4` frozen coordinates (counting those frozen in
/// `x0`), or [`Error::Retryable`] when the time budget expires first.
pub fn lovett_meka_partial_coloring(
    system: &ConstraintSystem<f64>,
    x0: &PartialColoring<f64>,
    rng_seed: u64,
    params: WalkParams,
) -> Result<PartialColoring<f64>> {
    let n = system.dim();
    if x0.len() != n {
        return Err(Error::invalid("x0 dimension does not match the system"));
    }
    let gate = system.budget_gate_value();
    if gate > 1.0 / 16.0 + 1e-12 {
        return Err(Error::invalid(format!(
            "budget condition violated: sum exp(-c^2/16) = {gate:.6} > 1/16"
        )));
    }
    if params.max_time <= 0.0 {
        return Err(Error::invalid("max_time must be positive"));
    }
    let step = params.step_size.unwrap_or(1.0 / (8.0 * (n as f64).sqrt()));
    if step <= 0.0 {
        return Err(Error::invalid("step_size must be positive"));
    }
    let stick_tol = params.stick_tol.unwrap_or(step / 4.0);
    let target = freeze_target(n);

    let mut state = WalkState::new(system, x0, stick_tol);
    if state.frozen_count >= n {
        return Ok(state.into_partial_coloring());
    }

    let mut rng = rng_from_seed(rng_seed);
    let steps = (params.max_time / (step * step)).ceil() as u64;
    let mut g = vec![0.0f64; n];

    for step_idx in 0..steps {
        if state.frozen_count >= n || (params.early_exit && state.frozen_count >= target) {
            break;
        }
        for (i, gi) in g.iter_mut().enumerate() {
            *gi = if state.frozen[i] { 0.0 } else { rng.sample::<f64, _>(StandardNormal) * step };
        }
        state.project(&mut g);
        state.advance(&g);
        if step_idx % 1024 == 1023 {
            state.refresh();
        }
    }

    state.refresh();
    if state.frozen_count >= target {
        let pc = state.into_partial_coloring();
        debug_assert!(verify_slabs(system, x0, &pc));
        Ok(pc)
    } else {
        Err(Error::Retryable(format!(
            "walk froze {} of {} coordinates (needed {})",
            state.frozen_count, n, target
        )))
    }
}

/// Exact postcondition check used by tests: every slab within tolerance.
pub fn verify_slabs(
    system: &ConstraintSystem<f64>,
    x0: &PartialColoring<f64>,
    x: &PartialColoring<f64>,
) -> bool {
    let n = system.dim() as f64;
    let tol = 1e-6 * n.sqrt();
    let diff: Vec<f64> =
        x.values().iter().zip(x0.values()).map(|(a, b)| a - b).collect();
    system
        .rows()
        .iter()
        .zip(system.budgets())
        .all(|(row, &c)| crate::scalar::dot(row, &diff).abs() <= c * n.sqrt() + tol)
}

struct WalkState<'a> {
    system: &'a ConstraintSystem<f64>,
    x: Vec<f64>,
    x0: Vec<f64>,
    frozen: Vec<bool>,
    frozen_count: usize,
    /// Current functional values `<x - x0, a(j)>`.
    phi: Vec<f64>,
    /// Slab half-widths `c_j sqrt(n)`.
    cap: Vec<f64>,
    stuck: Vec<bool>,
    /// Orthonormal basis of stuck constraint normals over active coordinates.
    basis: Vec<Vec<f64>>,
    stick_tol: f64,
}

impl<'a> WalkState<'a> {
    fn new(system: &'a ConstraintSystem<f64>, x0: &PartialColoring<f64>, stick_tol: f64) -> Self {
        let n = system.dim();
        let sqrt_n = (n as f64).sqrt();
        let x: Vec<f64> = x0.values().to_vec();
        let frozen: Vec<bool> = (0..n).map(|i| x0.is_frozen(i)).collect();
        let frozen_count = frozen.iter().filter(|&&f| f).count();
        let cap: Vec<f64> = system.budgets().iter().map(|&c| c * sqrt_n).collect();
        let mut st = WalkState {
            system,
            x,
            x0: x0.values().to_vec(),
            frozen,
            frozen_count,
            phi: vec![0.0; system.num_rows()],
            cap,
            stuck: vec![false; system.num_rows()],
            basis: Vec::new(),
            stick_tol,
        };
        // Zero-budget rows are stuck from the start.
        for j in 0..st.system.num_rows() {
            if st.cap[j] <= st.stick_tol * st.row_active_norm(j) {
                st.stick_constraint(j);
            }
        }
        st
    }

    fn row_active_norm(&self, j: usize) -> f64 {
        self.system.rows()[j]
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.frozen[*i])
            .map(|(_, &a)| a * a)
            .sum::<f64>()
            .sqrt()
    }

    /// Remove components along every stuck normal.
    fn project(&self, g: &mut [f64]) {
        for q in &self.basis {
            let c = crate::scalar::dot(q, g);
            for (gi, qi) in g.iter_mut().zip(q) {
                *gi -= c * qi;
            }
        }
    }

    /// Move along `delta`, clipped at the first boundary crossing; stick
    /// whatever is hit or grazed.
    fn advance(&mut self, delta: &[f64]) {
        let m = self.system.num_rows();
        // Directional derivative of each unstuck functional.
        let mut d = vec![0.0f64; m];
        for j in 0..m {
            if !self.stuck[j] {
                d[j] = crate::scalar::dot(&self.system.rows()[j], delta);
            }
        }
        let mut lambda = 1.0f64;
        for j in 0..m {
            if self.stuck[j] || d[j] == 0.0 {
                continue;
            }
            let room = if d[j] > 0.0 { self.cap[j] - self.phi[j] } else { -self.cap[j] - self.phi[j] };
            let t = room / d[j];
            if t >= 0.0 && t < lambda {
                lambda = t;
            }
        }
        for i in 0..self.x.len() {
            if self.frozen[i] || delta[i] == 0.0 {
                continue;
            }
            let room = if delta[i] > 0.0 { 1.0 - self.x[i] } else { -1.0 - self.x[i] };
            let t = room / delta[i];
            if t >= 0.0 && t < lambda {
                lambda = t;
            }
        }

        for i in 0..self.x.len() {
            if !self.frozen[i] {
                self.x[i] = (self.x[i] + lambda * delta[i]).clamp(-1.0, 1.0);
            }
        }
        for j in 0..m {
            if !self.stuck[j] {
                self.phi[j] = (self.phi[j] + lambda * d[j]).clamp(-self.cap[j], self.cap[j]);
            }
        }

        // Stick anything at or within stick_tol of its boundary.
        let face_hits: Vec<usize> = (0..self.x.len())
            .filter(|&i| !self.frozen[i] && self.x[i].abs() >= 1.0 - self.stick_tol)
            .collect();
        for i in face_hits {
            self.freeze_coord(i);
        }
        for j in 0..m {
            if !self.stuck[j]
                && self.cap[j] - self.phi[j].abs() <= self.stick_tol * self.row_active_norm(j)
            {
                self.stick_constraint(j);
            }
        }
    }

    fn freeze_coord(&mut self, i: usize) {
        self.x[i] = if self.x[i] < 0.0 { -1.0 } else { 1.0 };
        self.frozen[i] = true;
        self.frozen_count += 1;
        // The active subspace lost a dimension; rebuild the stuck-normal basis
        // over the remaining coordinates.
        for q in &mut self.basis {
            q[i] = 0.0;
        }
        self.reorthonormalize();
    }

    fn stick_constraint(&mut self, j: usize) {
        self.stuck[j] = true;
        let mut v: Vec<f64> = self
            .system.rows()[j]
            .iter()
            .enumerate()
            .map(|(i, &a)| if self.frozen[i] { 0.0 } else { a })
            .collect();
        for q in &self.basis {
            let c = crate::scalar::dot(q, &v);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
        let norm = crate::scalar::norm2(&v);
        if norm > 1e-10 {
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            self.basis.push(v);
        }
        // If the residual is negligible the normal already lies in the span:
        // the functional cannot move, nothing to add.
    }

    fn reorthonormalize(&mut self) {
        let old = std::mem::take(&mut self.basis);
        for mut v in old {
            for q in &self.basis {
                let c = crate::scalar::dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
            let norm = crate::scalar::norm2(&v);
            if norm > 1e-10 {
                for vi in v.iter_mut() {
                    *vi /= norm;
                }
                self.basis.push(v);
            }
        }
    }

    /// Recompute functionals exactly from the state to shed incremental drift.
    fn refresh(&mut self) {
        let diff: Vec<f64> = self.x.iter().zip(&self.x0).map(|(a, b)| a - b).collect();
        for j in 0..self.system.num_rows() {
            let exact = crate::scalar::dot(&self.system.rows()[j], &diff);
            self.phi[j] = exact.clamp(-self.cap[j], self.cap[j]);
        }
    }

    fn into_partial_coloring(self) -> PartialColoring<f64> {
        let mut pc = PartialColoring::from_values(
            self.x.iter().map(|v| v.clamp(-1.0, 1.0)).collect(),
        )
        .expect("walk state stays in the cube");
        // from_values already froze everything at ±1; make sure the walk's own
        // bookkeeping agrees.
        for i in 0..self.frozen.len() {
            if self.frozen[i] {
                pc.freeze(i);
            }
        }
        pc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_walk_freezes_quarter() {
        let n = 16;
        let sys = ConstraintSystem::<f64>::empty(n);
        let x0 = PartialColoring::zero(n);
        let out =
            lovett_meka_partial_coloring(&sys, &x0, 5, WalkParams::default()).unwrap();
        assert!(out.frozen_count() >= 4);
        assert!(out.values().iter().all(|v| v.abs() <= 1.0));
    }

    #[test]
    fn already_signed_input_returns_unchanged() {
        let n = 8;
        let sys = ConstraintSystem::<f64>::empty(n);
        let vals = vec![1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0, -1.0];
        let x0 = PartialColoring::from_values(vals.clone()).unwrap();
        let out =
            lovett_meka_partial_coloring(&sys, &x0, 1, WalkParams::default()).unwrap();
        assert_eq!(out.values(), vals.as_slice());
        assert_eq!(out.frozen_count(), n);
    }

    #[test]
    fn gate_violation_rejected() {
        let n = 16;
        // Four rows with budget 7: sum exp(-49/16) ~ 0.187 > 1/16.
        let rows = vec![vec![1.0; n]; 4];
        let sys = ConstraintSystem::uniform(rows, 7.0).unwrap();
        let x0 = PartialColoring::zero(n);
        let err = lovett_meka_partial_coloring(&sys, &x0, 1, WalkParams::default());
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn constraints_hold_exactly_on_random_instances() {
        use rand::Rng;
        let mut rng = crate::rng::rng_from_seed(2024);
        for trial in 0..20 {
            let n = 16;
            let m = 4;
            let rows: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect())
                .collect();
            let sys = ConstraintSystem::uniform(rows, 9.0).unwrap();
            assert!(sys.budget_gate_value() <= 1.0 / 16.0);
            let x0 = PartialColoring::zero(n);
            let out = lovett_meka_partial_coloring(&sys, &x0, trial, WalkParams::default())
                .expect("n=16 m=4 c=9 instance should succeed");
            assert!(out.frozen_count() >= 4);
            assert!(verify_slabs(&sys, &x0, &out));
            // Budget 9 on sqrt(16): |<x, a>| <= 36.
            for row in sys.rows() {
                assert!(crate::scalar::dot(row, out.values()).abs() <= 36.0 + 1e-9);
            }
        }
    }
}
