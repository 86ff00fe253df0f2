//! Square-root LASSO solver with ridge-like augmentation and optional
//! nonnegativity: safe feature elimination, sequential coordinate descent with
//! closed-form univariate steps, and duality-gap-certified termination.
//!
//! The augmented matrix `[Phi; sigma I]` and target `[y; 0]` are never
//! materialized; everything runs on the identities
//! `||phi~_i||^2 = ||phi_i||^2 + sigma^2` and `phi~_i' y~ = phi_i' y`,
//! keeping storage `O(n)` beyond the design matrix itself.

mod kernel;
mod state;
mod univariate;

pub use kernel::{kernel_column, KernelCache};
pub use state::{
    coordinate_update, dual_bound, DualCertificate, EpochRecord, NoTrace, RecordingTrace,
    SolverState, TraceSink,
};
pub use univariate::univariate_solve;

use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basis::DesignMatrix;
use crate::error::{Error, Result};

/// An epoch whose largest coordinate step falls below this is considered
/// stalled and the sweep stops even if the requested gap was not certified.
const STALL_STEP: f64 = 1e-12;

/// Default support threshold for the unconstrained problem, where exact zeros
/// are not guaranteed by the update formula.
const UNCONSTRAINED_SUPPORT_THRESHOLD: f64 = 1e-12;

/// A fully specified instance: design matrix, response, per-feature weights,
/// augmentation strength and the choice of constrained vs. unconstrained
/// problem. Immutable; safe to share across concurrent solves.
#[derive(Debug)]
pub struct ProblemData {
    design: Arc<DesignMatrix>,
    response: Vec<f64>,
    weights: Vec<f64>,
    sigma: f64,
    nonnegative: bool,
    response_sq_norm: f64,
    /// `Phi' y`, evaluated once on first use.
    phi_dot_y: OnceLock<Vec<f64>>,
}

impl ProblemData {
    pub fn new(
        design: Arc<DesignMatrix>,
        response: Vec<f64>,
        weights: Vec<f64>,
        sigma: f64,
        nonnegative: bool,
    ) -> Result<Self> {
        if response.len() != design.num_samples() {
            return Err(Error::data(format!(
                "response has {} entries but the design matrix has {} rows",
                response.len(),
                design.num_samples()
            )));
        }
        if weights.len() != design.num_columns() {
            return Err(Error::data(format!(
                "weight vector has {} entries but the design matrix has {} columns",
                weights.len(),
                design.num_columns()
            )));
        }
        if !response.iter().all(|v| v.is_finite()) {
            return Err(Error::data("response contains non-finite values"));
        }
        if let Some(bad) = weights.iter().position(|l| *l < 0.0 || !l.is_finite()) {
            return Err(Error::data(format!(
                "weight {} is {}, weights must be finite and >= 0",
                bad + 1,
                weights[bad]
            )));
        }
        if sigma < 0.0 || !sigma.is_finite() {
            return Err(Error::data(format!(
                "sigma must be finite and >= 0, got {sigma}"
            )));
        }
        let response_sq_norm = response.iter().map(|v| v * v).sum();
        Ok(ProblemData {
            design,
            response,
            weights,
            sigma,
            nonnegative,
            response_sq_norm,
            phi_dot_y: OnceLock::new(),
        })
    }

    pub fn design(&self) -> &DesignMatrix {
        &self.design
    }

    pub fn design_shared(&self) -> Arc<DesignMatrix> {
        Arc::clone(&self.design)
    }

    pub fn response(&self) -> &[f64] {
        &self.response
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn nonnegative(&self) -> bool {
        self.nonnegative
    }

    pub fn num_samples(&self) -> usize {
        self.design.num_samples()
    }

    pub fn num_features(&self) -> usize {
        self.design.num_columns()
    }

    pub fn response_sq_norm(&self) -> f64 {
        self.response_sq_norm
    }

    /// Squared norm of the augmented column: `||phi_i||^2 + sigma^2`.
    pub fn aug_column_sq_norm(&self, i: usize) -> f64 {
        self.design.column_sq_norm(i) + self.sigma * self.sigma
    }

    /// `Phi' y`, cached after the first call.
    pub fn phi_dot_y(&self) -> &[f64] {
        self.phi_dot_y.get_or_init(|| {
            (0..self.design.num_columns())
                .map(|i| {
                    self.design
                        .column(i)
                        .iter()
                        .zip(&self.response)
                        .map(|(p, y)| p * y)
                        .sum()
                })
                .collect()
        })
    }

    /// Sub-problem over the listed feature columns (same response, sigma, mode).
    pub fn restrict(&self, indices: &[usize]) -> ProblemData {
        let design = Arc::new(self.design.select_columns(indices));
        let weights = indices.iter().map(|&i| self.weights[i]).collect();
        ProblemData {
            design,
            response: self.response.clone(),
            weights,
            sigma: self.sigma,
            nonnegative: self.nonnegative,
            response_sq_norm: self.response_sq_norm,
            phi_dot_y: OnceLock::new(),
        }
    }
}

/// Termination and bookkeeping knobs for a solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Absolute duality-gap threshold for certified termination.
    pub gap_tolerance: f64,
    /// Hard cap on full coordinate sweeps.
    pub max_epochs: usize,
    /// Support-reporting threshold; `None` picks 0 for the nonnegative problem
    /// (its zeros are exact) and 1e-12 otherwise.
    pub zero_threshold: Option<f64>,
    /// Byte budget for the kernel-column cache; 0 recomputes every column.
    pub kernel_cache_bytes: usize,
    /// Order in which coordinates are visited within an epoch.
    pub sweep_order: SweepOrder,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            gap_tolerance: 1e-6,
            max_epochs: 10_000,
            zero_threshold: None,
            kernel_cache_bytes: 0,
            sweep_order: SweepOrder::Ascending,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if self.gap_tolerance <= 0.0 || self.gap_tolerance.is_nan() {
            return Err(Error::config(format!(
                "gap tolerance must be > 0, got {}",
                self.gap_tolerance
            )));
        }
        if self.max_epochs == 0 {
            return Err(Error::config("max epochs must be >= 1"));
        }
        if let Some(t) = self.zero_threshold {
            if t < 0.0 || t.is_nan() {
                return Err(Error::config(format!(
                    "zero threshold must be >= 0, got {t}"
                )));
            }
        }
        Ok(())
    }

    fn support_threshold(&self, nonnegative: bool) -> f64 {
        self.zero_threshold.unwrap_or(if nonnegative {
            0.0
        } else {
            UNCONSTRAINED_SUPPORT_THRESHOLD
        })
    }
}

/// Coordinate visiting order. Ascending is deterministic and the default;
/// shuffled sweeps re-randomize each epoch from a fixed seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepOrder {
    Ascending,
    Shuffled { seed: u64 },
}

/// Outcome of the pre-solve elimination test
/// `||phi_i||^2 + sigma^2 < lambda_i^2  =>  x_i* = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureEliminationReport {
    /// Indices whose dual constraint can be active: kept in the problem.
    pub kept: Vec<usize>,
    /// Indices certified zero at optimum.
    pub eliminated: Vec<usize>,
    pub original_n: usize,
    pub reduced_n: usize,
}

/// Partitions features by the elimination test. Equality keeps the feature.
pub fn eliminate_features(problem: &ProblemData) -> FeatureEliminationReport {
    let n = problem.num_features();
    let mut kept = Vec::with_capacity(n);
    let mut eliminated = Vec::new();
    for i in 0..n {
        let li = problem.weight(i);
        if problem.aug_column_sq_norm(i) < li * li {
            eliminated.push(i);
        } else {
            kept.push(i);
        }
    }
    let reduced_n = kept.len();
    FeatureEliminationReport {
        kept,
        eliminated,
        original_n: n,
        reduced_n,
    }
}

/// Whether `x = 0` solves the problem: `|phi_i' y| <= lambda_i ||y||` for every
/// feature (one-sided without the absolute value in the nonnegative case).
pub fn is_zero_optimal(problem: &ProblemData) -> bool {
    let y_norm = problem.response_sq_norm().sqrt();
    problem
        .phi_dot_y()
        .iter()
        .zip(problem.weights())
        .all(|(&q, &l)| {
            if problem.nonnegative() {
                q <= l * y_norm
            } else {
                q.abs() <= l * y_norm
            }
        })
}

/// Objective `sqrt(||Phi x - y||^2 + sigma^2 ||x||^2) + lambda' |x|`,
/// evaluated from scratch.
pub fn objective(problem: &ProblemData, x: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), problem.num_features());
    let r = problem.design().residual(x, problem.response());
    let fit: f64 = r.iter().map(|v| v * v).sum::<f64>()
        + problem.sigma() * problem.sigma() * x.iter().map(|v| v * v).sum::<f64>();
    fit.sqrt()
        + problem
            .weights()
            .iter()
            .zip(x)
            .map(|(l, v)| l * v.abs())
            .sum::<f64>()
}

/// A solve outcome. `converged` distinguishes a certified gap from an
/// exhausted epoch budget; an unconverged solution is still returned so the
/// caller can decide what to do with it.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub gap: f64,
    pub epochs_used: usize,
    pub converged: bool,
    pub support: Vec<usize>,
}

/// Safe feature elimination followed by coordinate descent on the reduced
/// problem. Eliminated coordinates come back as exact zeros.
pub fn solve(problem: &ProblemData, config: &SolverConfig) -> Result<Solution> {
    solve_traced(problem, config, &mut NoTrace)
}

/// [`solve`] with structured diagnostics routed to `sink`.
pub fn solve_traced(
    problem: &ProblemData,
    config: &SolverConfig,
    sink: &mut dyn TraceSink,
) -> Result<Solution> {
    config.validate()?;
    if problem.response_sq_norm() == 0.0 {
        return Ok(trivial_solution(problem));
    }
    let report = eliminate_features(problem);
    if report.reduced_n == problem.num_features() {
        return coordinate_descent(problem, config, sink);
    }
    if report.reduced_n == 0 {
        // Every dual constraint is slack: x = 0 with a tight certificate.
        let p = problem.response_sq_norm().sqrt();
        return Ok(Solution {
            x: vec![0.0; problem.num_features()],
            objective: p,
            gap: 0.0,
            epochs_used: 0,
            converged: true,
            support: Vec::new(),
        });
    }
    let reduced = problem.restrict(&report.kept);
    let inner = coordinate_descent(&reduced, config, sink)?;
    let mut x = vec![0.0; problem.num_features()];
    for (&i, &v) in report.kept.iter().zip(&inner.x) {
        x[i] = v;
    }
    let support = report
        .kept
        .iter()
        .zip(&inner.x)
        .filter(|(_, &v)| v.abs() > config.support_threshold(problem.nonnegative()))
        .map(|(&i, _)| i)
        .collect();
    Ok(Solution {
        objective: objective(problem, &x),
        x,
        gap: inner.gap,
        epochs_used: inner.epochs_used,
        converged: inner.converged,
        support,
    })
}

/// Sequential coordinate descent on the problem as given (no elimination).
///
/// Starts from `x = 0`, sweeps every coordinate each epoch, and checks the
/// dual-bound stopping criterion once per epoch.
pub fn coordinate_descent(
    problem: &ProblemData,
    config: &SolverConfig,
    sink: &mut dyn TraceSink,
) -> Result<Solution> {
    config.validate()?;
    if problem.response_sq_norm() == 0.0 {
        return Ok(trivial_solution(problem));
    }
    if problem.sigma() == 0.0 {
        sink.warning("sigma = 0: coordinate descent is only guaranteed to converge for sigma > 0");
    }
    let n = problem.num_features();
    let threshold = config.support_threshold(problem.nonnegative());
    let mut state = SolverState::init(problem);
    let mut cache = KernelCache::with_budget(config.kernel_cache_bytes, n);
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = match config.sweep_order {
        SweepOrder::Ascending => None,
        SweepOrder::Shuffled { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut gap = f64::INFINITY;
    let mut epochs_used = 0;
    let mut converged = false;
    for epoch in 1..=config.max_epochs {
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let mut max_step = 0.0f64;
        for &i in &order {
            let delta = coordinate_update(problem, &mut state, i, &mut cache)?;
            max_step = max_step.max(delta.abs());
        }
        state.epoch = epoch;
        epochs_used = epoch;
        let cert = dual_bound(problem, &state);
        gap = cert.gap;
        let support_size = state.x.iter().filter(|v| v.abs() > threshold).count();
        sink.epoch(&EpochRecord {
            epoch,
            primal: cert.primal,
            dual: cert.lower_bound,
            gap: cert.gap,
            support_size,
        });
        if cert.gap <= config.gap_tolerance {
            converged = true;
            break;
        }
        if max_step <= STALL_STEP {
            break;
        }
    }
    let support = state
        .x
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() > threshold)
        .map(|(i, _)| i)
        .collect();
    Ok(Solution {
        objective: objective(problem, &state.x),
        x: state.x,
        gap,
        epochs_used,
        converged,
        support,
    })
}

fn trivial_solution(problem: &ProblemData) -> Solution {
    Solution {
        x: vec![0.0; problem.num_features()],
        objective: 0.0,
        gap: 0.0,
        epochs_used: 0,
        converged: true,
        support: Vec::new(),
    }
}
