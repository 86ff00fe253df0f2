//! Incremental coordinate-descent state: the iterate `x`, the correlation
//! vector `h = Phi~' r` and the squared residual norm `c = ||r||^2`, updated in
//! place so the residual itself is never stored.

use crate::error::{Error, Result};

use super::kernel::KernelCache;
use super::univariate::univariate_solve;
use super::ProblemData;

/// Mutable solver state. `h` and `c` always refer to the residual
/// `r = Phi~ x - y~` of the current iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub x: Vec<f64>,
    pub h: Vec<f64>,
    pub c: f64,
    pub epoch: usize,
}

impl SolverState {
    /// State at `x = 0`: `h = -Phi' y`, `c = ||y||^2`.
    pub fn init(problem: &ProblemData) -> Self {
        SolverState {
            x: vec![0.0; problem.num_features()],
            h: problem.phi_dot_y().iter().map(|&q| -q).collect(),
            c: problem.response_sq_norm(),
            epoch: 0,
        }
    }

    /// Recomputes `(h, c)` from scratch; used to test incremental consistency.
    pub fn recompute(problem: &ProblemData, x: &[f64]) -> (Vec<f64>, f64) {
        let design = problem.design();
        let sigma = problem.sigma();
        let r = design.residual(x, problem.response());
        let h = (0..design.num_columns())
            .map(|i| {
                let top: f64 = design.column(i).iter().zip(&r).map(|(p, rk)| p * rk).sum();
                top + sigma * sigma * x[i]
            })
            .collect();
        let c = r.iter().map(|v| v * v).sum::<f64>()
            + sigma * sigma * x.iter().map(|v| v * v).sum::<f64>();
        (h, c)
    }
}

/// Exactly minimizes the objective along coordinate `i` and folds the change
/// into the state. Returns the step `delta = z* - x_i`; a zero step leaves the
/// state untouched bit for bit.
pub fn coordinate_update(
    problem: &ProblemData,
    state: &mut SolverState,
    i: usize,
    kernel: &mut KernelCache,
) -> Result<f64> {
    let aug_sq = problem.aug_column_sq_norm(i);
    let xi = state.x[i];
    let hi = state.h[i];
    // Data of the univariate restriction, from the bookkeeping identities.
    let phi_dot_target = aug_sq * xi - hi;
    let target_sq = aug_sq * xi * xi + state.c - 2.0 * xi * hi;
    let z = univariate_solve(
        phi_dot_target,
        aug_sq,
        target_sq,
        problem.weight(i),
        problem.nonnegative(),
    )?;
    let delta = z - xi;
    if delta == 0.0 {
        return Ok(0.0);
    }
    if !delta.is_finite() {
        return Err(Error::NonFiniteUpdate { index: i });
    }
    let c_next = state.c + aug_sq * delta * delta + 2.0 * delta * hi;
    if !c_next.is_finite() {
        return Err(Error::NonFiniteUpdate { index: i });
    }
    state.x[i] = z;
    state.c = c_next;
    let column = kernel.column(problem, i);
    for (hj, kji) in state.h.iter_mut().zip(column) {
        *hj += kji * delta;
    }
    Ok(delta)
}

/// A dual-feasible point for the current iterate, stored through its action:
/// the vector is `alpha * r~ / ||r~||` with `r~` the augmented residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCertificate {
    /// Feasibility scaling in `[0, 1]`.
    pub alpha: f64,
    /// Lower bound on the optimal objective value.
    pub lower_bound: f64,
    /// Objective at the current iterate (from the incremental state).
    pub primal: f64,
    /// `primal - lower_bound`; certifies suboptimality.
    pub gap: f64,
}

/// Scales the normalized residual onto the dual-feasible set and evaluates the
/// induced lower bound. Everything is read off `h`, `c` and the cached
/// `Phi' y` in `O(n)`; no residual vector is formed.
pub fn dual_bound(problem: &ProblemData, state: &SolverState) -> DualCertificate {
    let c = state.c.max(0.0);
    let r_norm = c.sqrt();
    let weights = problem.weights();
    let l1: f64 = weights.iter().zip(&state.x).map(|(l, x)| l * x.abs()).sum();
    let primal = r_norm + l1;
    if r_norm == 0.0 {
        // Exact fit: the primal value itself is optimal.
        return DualCertificate {
            alpha: 1.0,
            lower_bound: primal,
            primal,
            gap: 0.0,
        };
    }
    let mut alpha = 1.0f64;
    if problem.nonnegative() {
        for (hi, &li) in state.h.iter().zip(weights) {
            let corr = hi / r_norm;
            if corr < -li {
                alpha = alpha.min(li / -corr);
            }
        }
    } else {
        for (hi, &li) in state.h.iter().zip(weights) {
            let corr = (hi / r_norm).abs();
            if corr > li {
                alpha = alpha.min(li / corr);
            }
        }
    }
    let fitted: f64 = state
        .x
        .iter()
        .zip(problem.phi_dot_y())
        .map(|(x, q)| x * q)
        .sum();
    let lower_bound = alpha * (problem.response_sq_norm() - fitted) / r_norm;
    DualCertificate {
        alpha,
        lower_bound,
        primal,
        gap: primal - lower_bound,
    }
}

/// Per-epoch progress record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    pub primal: f64,
    pub dual: f64,
    pub gap: f64,
    pub support_size: usize,
}

/// Receives structured diagnostics from a solve.
pub trait TraceSink {
    fn epoch(&mut self, record: &EpochRecord);
    fn warning(&mut self, _message: &str) {}
}

/// Discards all diagnostics.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoTrace;

impl TraceSink for NoTrace {
    fn epoch(&mut self, _record: &EpochRecord) {}
}

/// Collects every record in memory.
#[derive(Debug, Default, Clone)]
pub struct RecordingTrace {
    pub epochs: Vec<EpochRecord>,
    pub warnings: Vec<String>,
}

impl TraceSink for RecordingTrace {
    fn epoch(&mut self, record: &EpochRecord) {
        self.epochs.push(*record);
    }

    fn warning(&mut self, message: &str) {
        self.warnings.push(message.to_string());
    }
}
