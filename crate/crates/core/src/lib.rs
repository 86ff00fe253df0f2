//! Sparse identification of posynomial models.
//!
//! Builds an over-parametrized monomial dictionary from per-variable exponent
//! sets, then selects a sparse nonnegative combination by solving a regularized
//! square-root LASSO: safe feature elimination first, then sequential
//! coordinate descent with closed-form univariate updates and a duality-gap
//! certificate for termination. The unconstrained variant of the problem is
//! exposed alongside the nonnegative one.

pub mod basis;
pub mod error;
pub mod model;
pub mod pipeline;
pub mod solver;

pub use basis::{eval_monomial, Dataset, DesignMatrix, ExponentGrid, MonomialBasis};
pub use error::{Error, Result};
pub use model::{relative_error, PosynomialModel, Term};
pub use pipeline::{
    generate_example1, ingest, loo_validate, make_weights, sweep, FitSettings, LooReport,
    ParetoRow, SigmaRule, SweepSpec, WeightKind, WeightScheme,
};
pub use solver::{
    coordinate_descent, dual_bound, eliminate_features, is_zero_optimal, kernel_column, objective,
    solve, solve_traced, univariate_solve, DualCertificate, EpochRecord, FeatureEliminationReport,
    KernelCache, NoTrace, ProblemData, RecordingTrace, Solution, SolverConfig, SolverState,
    SweepOrder, TraceSink,
};
