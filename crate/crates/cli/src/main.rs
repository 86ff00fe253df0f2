//! `posyid`: identify sparse posynomial models from input/output data.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use posyid::pipeline::{self, FitSettings, SigmaRule, SweepSpec, WeightKind, WeightScheme};
use posyid::solver::{self, EpochRecord, ProblemData, SolverConfig, TraceSink};
use posyid::{DesignMatrix, Error, ExponentGrid, MonomialBasis, PosynomialModel};

#[derive(Parser)]
#[command(
    name = "posyid",
    version,
    about = "Sparse identification of posynomial models via a nonnegative regularized square-root LASSO"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a model at a single regularization weight.
    Fit(FitArgs),
    /// Trace the cardinality/error Pareto curve over a log-spaced gamma range.
    Sweep(SweepArgs),
    /// Report which dictionary columns safe feature elimination removes.
    Eliminate(EliminateArgs),
    /// Evaluate a stored model on a dataset (relative error).
    Eval(EvalArgs),
    /// Leave-one-out validation away from the domain boundary.
    Loo(LooArgs),
    /// Generate the synthetic three-variable benchmark dataset (example 1).
    GenExample1(GenArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Dataset CSV with header w_1,...,w_k,y.
    #[arg(long)]
    data: PathBuf,
    /// Exponent grid in TOML form (one `[[variable]]` table per input).
    #[arg(long)]
    grid: PathBuf,
    /// Weighting scheme: uniform (lambda_i = gamma) or colnorm
    /// (lambda_i = gamma * ||phi_i||^2).
    #[arg(long, value_enum, default_value_t = WeightsOpt::Colnorm)]
    weights: WeightsOpt,
    /// Augmentation strength: `auto` (min_i lambda_i / 10 for colnorm,
    /// gamma / 10 for uniform) or an explicit value.
    #[arg(long, default_value = "auto")]
    sigma: String,
    /// Solve the unconstrained problem instead of the nonnegative one.
    #[arg(long)]
    unconstrained: bool,
}

#[derive(Args)]
struct SolverArgs {
    /// Absolute duality-gap tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Epoch budget before giving up.
    #[arg(long, default_value_t = 1_000_000)]
    max_epochs: usize,
    /// Support-reporting threshold (default: 0 nonnegative, 1e-12 unconstrained).
    #[arg(long)]
    zero_threshold: Option<f64>,
    /// Kernel-column cache budget in MiB (0 disables caching).
    #[arg(long, default_value_t = 64)]
    kernel_cache_mb: usize,
    /// Shuffle the coordinate order each epoch with this seed (default:
    /// deterministic ascending sweeps).
    #[arg(long)]
    shuffle_seed: Option<u64>,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Regularization weight gamma.
    #[arg(long)]
    gamma: f64,
    /// Write the fitted model as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-epoch trace (epoch,primal,dual,gap,support_size) as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Exit 0 even if the gap tolerance was not certified.
    #[arg(long)]
    allow_unconverged: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    gamma_min: f64,
    #[arg(long)]
    gamma_max: f64,
    /// Number of log-spaced gamma values.
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Concurrent solves (0 = number of available cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the Pareto table as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EliminateArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long)]
    gamma: f64,
}

#[derive(Args)]
struct EvalArgs {
    /// Model JSON produced by `fit`.
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    data: PathBuf,
}

#[derive(Args)]
struct LooArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    gamma: f64,
    /// Per-side fraction of each observed input range excluded from validation.
    #[arg(long, default_value_t = 0.075)]
    margin: f64,
}

#[derive(Args)]
struct GenArgs {
    /// Number of samples.
    #[arg(long, default_value_t = 600)]
    m: usize,
    /// Noise-to-signal standard deviation ratio.
    #[arg(long, default_value_t = 0.01)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightsOpt {
    Uniform,
    Colnorm,
}

impl From<WeightsOpt> for WeightKind {
    fn from(value: WeightsOpt) -> Self {
        match value {
            WeightsOpt::Uniform => WeightKind::Uniform,
            WeightsOpt::Colnorm => WeightKind::ColNorm,
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes, like any other Unix filter;
    // Rust's default ignores SIGPIPE and println! panics on EPIPE instead.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_class(&e))
        }
    }
}

/// 1 = usage/configuration, 2 = data or numerical failure.
fn exit_class(error: &Error) -> u8 {
    match error {
        Error::Config(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Fit(args) => run_fit(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Eliminate(args) => run_eliminate(args),
        Command::Eval(args) => run_eval(args),
        Command::Loo(args) => run_loo(args),
        Command::GenExample1(args) => run_gen(args),
    }
}

fn resolve_sigma(sigma: &str, kind: WeightKind) -> Result<SigmaRule, Error> {
    if sigma == "auto" {
        return Ok(match kind {
            WeightKind::Uniform => SigmaRule::FractionOfGamma,
            WeightKind::ColNorm => SigmaRule::FractionOfMinLambda,
        });
    }
    let value: f64 = sigma
        .parse()
        .map_err(|_| Error::Config(format!("--sigma must be `auto` or a number, got `{sigma}`")))?;
    Ok(SigmaRule::Explicit(value))
}

fn solver_config(args: &SolverArgs) -> SolverConfig {
    SolverConfig {
        gap_tolerance: args.tol,
        max_epochs: args.max_epochs,
        zero_threshold: args.zero_threshold,
        kernel_cache_bytes: args.kernel_cache_mb * (1 << 20),
        sweep_order: match args.shuffle_seed {
            Some(seed) => posyid::SweepOrder::Shuffled { seed },
            None => posyid::SweepOrder::Ascending,
        },
    }
}

struct LoadedProblem {
    basis: MonomialBasis,
    design: Arc<DesignMatrix>,
    responses: Vec<f64>,
}

fn load_problem(args: &ProblemArgs) -> Result<LoadedProblem, Error> {
    let grid = ExponentGrid::from_file(&args.grid)?;
    let data = pipeline::ingest(&args.data)?;
    if data.num_vars() != grid.num_vars() {
        return Err(Error::Data(format!(
            "dataset has {} input variables but the grid declares {}",
            data.num_vars(),
            grid.num_vars()
        )));
    }
    let basis = MonomialBasis::from_grid(&grid);
    let design = DesignMatrix::build(&basis, &data)?.into_shared();
    eprintln!(
        "loaded {} samples, dictionary of {} monomials over {} variables",
        data.len(),
        basis.len(),
        basis.num_vars()
    );
    Ok(LoadedProblem {
        basis,
        design,
        responses: data.responses().to_vec(),
    })
}

/// Collects epoch records for an optional CSV dump; warnings go to stderr.
#[derive(Default)]
struct CliTrace {
    epochs: Vec<EpochRecord>,
}

impl TraceSink for CliTrace {
    fn epoch(&mut self, record: &EpochRecord) {
        self.epochs.push(*record);
    }

    fn warning(&mut self, message: &str) {
        eprintln!("warning: {message}");
    }
}

fn write_trace(path: &Path, epochs: &[EpochRecord]) -> Result<(), Error> {
    let mut out = String::from("epoch,primal,dual,gap,support_size\n");
    for r in epochs {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.epoch, r.primal, r.dual, r.gap, r.support_size
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

fn run_fit(args: FitArgs) -> Result<ExitCode, Error> {
    let kind = args.problem.weights.into();
    let settings = FitSettings {
        kind,
        sigma_rule: resolve_sigma(&args.problem.sigma, kind)?,
        nonnegative: !args.problem.unconstrained,
        solver: solver_config(&args.solver),
    };
    let loaded = load_problem(&args.problem)?;
    let mut trace = CliTrace::default();
    let (solution, weights, sigma) = pipeline::fit(
        &loaded.design,
        &loaded.responses,
        &settings,
        args.gamma,
        &mut trace,
    )?;
    if let Some(path) = &args.trace {
        write_trace(path, &trace.epochs)?;
    }

    let problem = ProblemData::new(
        Arc::clone(&loaded.design),
        loaded.responses.clone(),
        weights,
        sigma,
        settings.nonnegative,
    )?;
    let report = solver::eliminate_features(&problem);
    let re = posyid::relative_error(&loaded.design, &solution.x, &loaded.responses)?;
    println!("gamma: {}", args.gamma);
    println!("sigma: {sigma}");
    println!(
        "columns: {} kept of {} ({} eliminated)",
        report.reduced_n,
        report.original_n,
        report.eliminated.len()
    );
    println!(
        "epochs: {}, converged: {}, gap: {:.3e}",
        solution.epochs_used, solution.converged, solution.gap
    );
    println!("objective: {}", solution.objective);
    println!("training relative error: {:.6}", re);
    println!("support: {} terms", solution.support.len());
    for &i in solution.support.iter().take(25) {
        println!(
            "  x[{i}] = {:<12.6} exponents {:?}",
            solution.x[i],
            loaded.basis.exponents(i)
        );
    }
    if solution.support.len() > 25 {
        println!("  ... {} more", solution.support.len() - 25);
    }

    if let Some(path) = &args.out {
        let threshold = args
            .solver
            .zero_threshold
            .unwrap_or(if settings.nonnegative { 0.0 } else { 1e-12 });
        let model = PosynomialModel::from_solution(&loaded.basis, &solution.x, threshold)?;
        model.write_json(path)?;
        println!("wrote model to {}", path.display());
    }

    if !solution.converged && !args.allow_unconverged {
        eprintln!(
            "fit did not reach gap <= {} within {} epochs (gap = {:.3e})",
            args.solver.tol, args.solver.max_epochs, solution.gap
        );
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_sweep(args: SweepArgs) -> Result<ExitCode, Error> {
    let kind = args.problem.weights.into();
    let settings = FitSettings {
        kind,
        sigma_rule: resolve_sigma(&args.problem.sigma, kind)?,
        nonnegative: !args.problem.unconstrained,
        solver: solver_config(&args.solver),
    };
    let spec = SweepSpec {
        gamma_min: args.gamma_min,
        gamma_max: args.gamma_max,
        count: args.count,
    };
    spec.validate()?;
    let loaded = load_problem(&args.problem)?;
    let jobs = if args.jobs == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        args.jobs
    };
    let rows = pipeline::sweep(&loaded.design, &loaded.responses, &settings, &spec, jobs)?;
    println!("gamma        cardinality  rel_error    gap          converged  time_s");
    for row in &rows {
        println!(
            "{:<12.4e} {:<12} {:<12.6} {:<12.3e} {:<10} {:.2}",
            row.gamma, row.cardinality, row.relative_error, row.gap, row.converged, row.wall_time_s
        );
        if let Some(err) = &row.error {
            eprintln!("gamma {}: solve failed: {err}", row.gamma);
        }
    }
    if let Some(path) = &args.out {
        std::fs::write(path, pipeline::pareto_to_csv(&rows))?;
        println!("wrote Pareto table to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn run_eliminate(args: EliminateArgs) -> Result<ExitCode, Error> {
    let kind = args.problem.weights.into();
    let sigma_rule = resolve_sigma(&args.problem.sigma, kind)?;
    let loaded = load_problem(&args.problem)?;
    let scheme = WeightScheme {
        kind,
        gamma: args.gamma,
        sigma_rule,
    };
    let (weights, sigma) = pipeline::make_weights(&scheme, &loaded.design)?;
    let problem = ProblemData::new(
        loaded.design,
        loaded.responses,
        weights,
        sigma,
        !args.problem.unconstrained,
    )?;
    let report = solver::eliminate_features(&problem);
    println!("columns: {}", report.original_n);
    println!("kept: {}", report.reduced_n);
    println!("eliminated: {}", report.eliminated.len());
    let indices: Vec<String> = report.kept.iter().map(|i| i.to_string()).collect();
    println!("kept indices: {}", indices.join(" "));
    Ok(ExitCode::SUCCESS)
}

fn run_eval(args: EvalArgs) -> Result<ExitCode, Error> {
    let model = PosynomialModel::read_json(&args.model)?;
    let data = pipeline::ingest(&args.data)?;
    if data.num_vars() != model.num_vars() {
        return Err(Error::Data(format!(
            "dataset has {} input variables but the model expects {}",
            data.num_vars(),
            model.num_vars()
        )));
    }
    let predictions = model.predict_dataset(&data)?;
    let re = posyid::model::relative_error_of_predictions(&predictions, data.responses())?;
    println!("samples: {}", data.len());
    println!("relative error: {re:.6}");
    Ok(ExitCode::SUCCESS)
}

fn run_loo(args: LooArgs) -> Result<ExitCode, Error> {
    let kind = args.problem.weights.into();
    let settings = FitSettings {
        kind,
        sigma_rule: resolve_sigma(&args.problem.sigma, kind)?,
        nonnegative: !args.problem.unconstrained,
        solver: solver_config(&args.solver),
    };
    let grid = ExponentGrid::from_file(&args.problem.grid)?;
    let data = pipeline::ingest(&args.problem.data)?;
    let report = pipeline::loo_validate(&data, &grid, &settings, args.gamma, args.margin)?;
    if report.validated.is_empty() {
        println!(
            "validation set is empty: no point clears the {} boundary margin",
            args.margin
        );
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "validated {} of {} points (margin {})",
        report.validated.len(),
        data.len(),
        args.margin
    );
    for (k, nu) in report.validated.iter().zip(&report.point_errors) {
        println!("nu[{k}] = {nu:.6}");
    }
    println!("AE = {:.6}", report.accumulated_error);
    Ok(ExitCode::SUCCESS)
}

fn run_gen(args: GenArgs) -> Result<ExitCode, Error> {
    let data = pipeline::generate_example1(args.seed, args.m, args.noise)?;
    pipeline::write_dataset_csv(&data, &args.out)?;
    println!(
        "wrote {} samples (noise ratio {}, seed {}) to {}",
        args.m,
        args.noise,
        args.seed,
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}
