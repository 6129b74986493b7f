//! Product-integration time stepping for `𝔻u = ±λu`, `u(0) = 1`.
//!
//! With `u` piecewise linear on the mesh, the operator at `t_n` is
//!
//! ```text
//! Σ_{j<n} (u_{j+1} - u_j)/(t_{j+1} - t_j) · [K₁(t_n - t_j) - K₁(t_n - t_{j+1})],
//! ```
//!
//! with `K₁(t) = ∫₀ᵗ k`. Only the last term involves `u_n`, so each step is a
//! scalar linear solve. The work is `O(N²)` kernel evaluations.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::KernelSymbol;

/// Row length from which kernel evaluations are spread over threads.
const PARALLEL_ROW: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshSpec {
    pub horizon: f64,
    pub steps: usize,
    /// t_j = horizon·(j/steps)^grading.
    pub grading: f64,
}

impl MeshSpec {
    pub fn new(horizon: f64, steps: usize, grading: f64) -> Result<Self> {
        let mesh = MeshSpec { horizon, steps, grading };
        mesh.validate()?;
        Ok(mesh)
    }

    fn validate(&self) -> Result<()> {
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(Error::invalid("horizon", format!("{} must be positive", self.horizon)));
        }
        if self.steps == 0 {
            return Err(Error::invalid("steps", "must be positive"));
        }
        if !(self.grading.is_finite() && self.grading >= 1.0) {
            return Err(Error::invalid("grading", format!("{} must be at least 1", self.grading)));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.steps as f64;
        let mut t: Vec<f64> = (0..=self.steps).map(|j| self.horizon * (j as f64 / n).powf(self.grading)).collect();
        t[self.steps] = self.horizon;
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepSolution {
    pub mesh: MeshSpec,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// K₁(h_n)/h_n for each step: the weight of u_n in its own equation.
    pub diagonal_weights: Vec<f64>,
}

impl StepSolution {
    /// Piecewise-linear interpolant of the solution.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t <= self.mesh.horizon) {
            return Err(Error::invalid("t", format!("{t} is outside [0, {}]", self.mesh.horizon)));
        }
        let i = self.times.partition_point(|&x| x <= t).clamp(1, self.times.len() - 1);
        let (a, b) = (self.times[i - 1], self.times[i]);
        let w = (t - a) / (b - a);
        Ok(self.values[i - 1] * (1.0 - w) + self.values[i] * w)
    }
}

/// K₁(t) = ∫₀ᵗ k(s) ds.
pub fn cumulative_kernel(symbol: &KernelSymbol, t: f64) -> Result<f64> {
    symbol.cumulative_kernel(t)
}

fn march(symbol: &KernelSymbol, rate: f64, mesh: &MeshSpec) -> Result<StepSolution> {
    mesh.validate()?;
    let t = mesh.points();
    let n_steps = mesh.steps;
    let mut u = Vec::with_capacity(n_steps + 1);
    u.push(1.0);
    let mut slopes: Vec<f64> = Vec::with_capacity(n_steps);
    let mut diagonal_weights = Vec::with_capacity(n_steps);
    let mut row: Vec<f64> = Vec::with_capacity(n_steps);
    for n in 1..=n_steps {
        // row[j] = K₁(t_n - t_j) for j < n; K₁(0) = 0
        let tn = t[n];
        row.clear();
        if n >= PARALLEL_ROW {
            row.par_extend(t[..n].par_iter().map(|&tj| symbol.cumulative_unchecked(tn - tj)));
        } else {
            row.extend(t[..n].iter().map(|&tj| symbol.cumulative_unchecked(tn - tj)));
        }
        let history: f64 = (0..n - 1).map(|j| slopes[j] * (row[j] - row[j + 1])).sum();
        let h = tn - t[n - 1];
        let a = row[n - 1] / h;
        let coefficient = a - rate;
        if !(coefficient > 0.0) || !coefficient.is_finite() {
            return Err(Error::StepSize { step: n, coefficient });
        }
        let un = (a * u[n - 1] - history) / coefficient;
        if !un.is_finite() {
            return Err(Error::NonFinite { what: "time step" });
        }
        slopes.push((un - u[n - 1]) / h);
        diagonal_weights.push(a);
        u.push(un);
    }
    Ok(StepSolution { mesh: *mesh, times: t, values: u, diagonal_weights })
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("lambda", format!("{lambda} must be positive")))
    }
}

/// Growth equation `𝔻u = λu`.
pub fn solve_growth_direct(symbol: &KernelSymbol, lambda: f64, mesh: &MeshSpec) -> Result<StepSolution> {
    check_lambda(lambda)?;
    march(symbol, lambda, mesh)
}

/// Relaxation equation `𝔻u = -λu`.
pub fn solve_relaxation_direct(symbol: &KernelSymbol, lambda: f64, mesh: &MeshSpec) -> Result<StepSolution> {
    check_lambda(lambda)?;
    march(symbol, -lambda, mesh)
}
