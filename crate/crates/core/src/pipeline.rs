//! Batch orchestration: dataset ingestion, weighting schemes, regularization
//! sweeps with Pareto reporting, synthetic benchmark generation and
//! leave-one-out validation.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::basis::{eval_monomial, Dataset, DesignMatrix, ExponentGrid, MonomialBasis};
use crate::error::{Error, Result};
use crate::model::relative_error;
use crate::solver::{NoTrace, ProblemData, Solution, SolverConfig, TraceSink};

/// How per-feature weights and the augmentation strength derive from `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightScheme {
    pub kind: WeightKind,
    pub gamma: f64,
    pub sigma_rule: SigmaRule,
}

/// `uniform` sets every weight to `gamma`; `colnorm` scales by the squared
/// column norm, `lambda_i = gamma ||phi_i||^2`, which penalizes large-power
/// monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Uniform,
    ColNorm,
}

/// Rule for the augmentation strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaRule {
    /// `sigma = gamma / 10` (natural with uniform weights).
    FractionOfGamma,
    /// `sigma = min_i lambda_i / 10` (natural with colnorm weights).
    FractionOfMinLambda,
    Explicit(f64),
}

impl WeightScheme {
    pub fn validate(&self) -> Result<()> {
        if self.gamma <= 0.0 || !self.gamma.is_finite() {
            return Err(Error::config(format!(
                "gamma must be finite and > 0, got {}",
                self.gamma
            )));
        }
        if let SigmaRule::Explicit(s) = self.sigma_rule {
            if s < 0.0 || !s.is_finite() {
                return Err(Error::config(format!(
                    "explicit sigma must be finite and >= 0, got {s}"
                )));
            }
        }
        Ok(())
    }
}

/// Materializes `(lambda, sigma)` for a design matrix. Column norms are the
/// unaugmented ones; `sigma` is derived after `lambda`.
pub fn make_weights(scheme: &WeightScheme, design: &DesignMatrix) -> Result<(Vec<f64>, f64)> {
    scheme.validate()?;
    let weights: Vec<f64> = match scheme.kind {
        WeightKind::Uniform => vec![scheme.gamma; design.num_columns()],
        WeightKind::ColNorm => design
            .column_sq_norms()
            .iter()
            .map(|s| scheme.gamma * s)
            .collect(),
    };
    let sigma = match scheme.sigma_rule {
        SigmaRule::FractionOfGamma => scheme.gamma / 10.0,
        SigmaRule::FractionOfMinLambda => {
            weights.iter().cloned().fold(f64::INFINITY, f64::min) / 10.0
        }
        SigmaRule::Explicit(s) => s,
    };
    Ok((weights, sigma))
}

/// Everything needed to fit at one `gamma`, apart from the data.
#[derive(Debug, Clone, PartialEq)]
pub struct FitSettings {
    pub kind: WeightKind,
    pub sigma_rule: SigmaRule,
    pub nonnegative: bool,
    pub solver: SolverConfig,
}

impl Default for FitSettings {
    fn default() -> Self {
        FitSettings {
            kind: WeightKind::ColNorm,
            sigma_rule: SigmaRule::FractionOfMinLambda,
            nonnegative: true,
            solver: SolverConfig::default(),
        }
    }
}

/// Builds the weighted problem for one `gamma` and solves it.
pub fn fit(
    design: &Arc<DesignMatrix>,
    response: &[f64],
    settings: &FitSettings,
    gamma: f64,
    sink: &mut dyn TraceSink,
) -> Result<(Solution, Vec<f64>, f64)> {
    let scheme = WeightScheme {
        kind: settings.kind,
        gamma,
        sigma_rule: settings.sigma_rule,
    };
    let (weights, sigma) = make_weights(&scheme, design)?;
    let problem = ProblemData::new(
        Arc::clone(design),
        response.to_vec(),
        weights.clone(),
        sigma,
        settings.nonnegative,
    )?;
    let solution = crate::solver::solve_traced(&problem, &settings.solver, sink)?;
    Ok((solution, weights, sigma))
}

/// Logarithmically spaced sweep over the regularization weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub count: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma_min > 0.0 && self.gamma_max > self.gamma_min) {
            return Err(Error::config(format!(
                "sweep needs 0 < gamma_min < gamma_max, got [{}, {}]",
                self.gamma_min, self.gamma_max
            )));
        }
        if self.count < 2 {
            return Err(Error::config("sweep needs at least 2 gamma values"));
        }
        Ok(())
    }

    pub fn gammas(&self) -> Vec<f64> {
        let ratio = self.gamma_max / self.gamma_min;
        (0..self.count)
            .map(|k| self.gamma_min * ratio.powf(k as f64 / (self.count - 1) as f64))
            .collect()
    }
}

/// One point of the Pareto trade-off curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoRow {
    pub gamma: f64,
    /// Nonzero count of the solution.
    pub cardinality: usize,
    pub relative_error: f64,
    pub gap: f64,
    pub converged: bool,
    pub wall_time_s: f64,
    /// Populated when the solve failed outright; the sweep continues.
    pub error: Option<String>,
}

/// Solves one problem per `gamma`, up to `jobs` rows concurrently. Rows come
/// back in ascending `gamma` order regardless of scheduling.
pub fn sweep(
    design: &Arc<DesignMatrix>,
    response: &[f64],
    settings: &FitSettings,
    spec: &SweepSpec,
    jobs: usize,
) -> Result<Vec<ParetoRow>> {
    spec.validate()?;
    let gammas = spec.gammas();
    let jobs = jobs.max(1).min(gammas.len());
    let slots: Mutex<Vec<Option<ParetoRow>>> = Mutex::new(vec![None; gammas.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= gammas.len() {
                    break;
                }
                let row = sweep_row(design, response, settings, gammas[idx]);
                slots.lock().unwrap()[idx] = Some(row);
            });
        }
    });
    Ok(slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("row computed"))
        .collect())
}

fn sweep_row(
    design: &Arc<DesignMatrix>,
    response: &[f64],
    settings: &FitSettings,
    gamma: f64,
) -> ParetoRow {
    let started = Instant::now();
    match fit(design, response, settings, gamma, &mut NoTrace) {
        Ok((solution, _, _)) => {
            let re = relative_error(design, &solution.x, response).unwrap_or(f64::NAN);
            ParetoRow {
                gamma,
                cardinality: solution.support.len(),
                relative_error: re,
                gap: solution.gap,
                converged: solution.converged,
                wall_time_s: started.elapsed().as_secs_f64(),
                error: None,
            }
        }
        Err(e) => ParetoRow {
            gamma,
            cardinality: 0,
            relative_error: f64::NAN,
            gap: f64::NAN,
            converged: false,
            wall_time_s: started.elapsed().as_secs_f64(),
            error: Some(e.to_string()),
        },
    }
}

/// Renders sweep rows in the `pareto.csv` layout.
pub fn pareto_to_csv(rows: &[ParetoRow]) -> String {
    let mut out = String::from("gamma,cardinality,relative_error,gap,converged,wall_time_s\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.gamma, row.cardinality, row.relative_error, row.gap, row.converged, row.wall_time_s
        ));
    }
    out
}

/// The three-variable benchmark posynomial with negative and fractional
/// exponents used by the synthetic generator.
fn benchmark_posynomial(w: &[f64]) -> f64 {
    w[1].powf(1.5) * w[2].powi(3)
        + 2.0 * w[0].powi(2) / w[2]
        + 3.0 * w[1].powf(3.2)
        + 4.0 * w[0].sqrt() * w[2] / (w[1] * w[1])
}

/// Lower and upper bound of each input coordinate drawn by the generator.
pub const EXAMPLE1_INPUT_RANGE: (f64, f64) = (0.2, 3.2);

/// Generates the synthetic benchmark dataset: `m` inputs uniform on
/// `[0.2, 3.2]^3`, responses from the benchmark posynomial plus Gaussian noise
/// whose standard deviation is `noise_ratio` times the sample standard
/// deviation of the noiseless responses. Deterministic for a fixed seed.
pub fn generate_example1(seed: u64, m: usize, noise_ratio: f64) -> Result<Dataset> {
    if m == 0 {
        return Err(Error::config("generator needs m >= 1"));
    }
    if noise_ratio < 0.0 || !noise_ratio.is_finite() {
        return Err(Error::config(format!(
            "noise ratio must be finite and >= 0, got {noise_ratio}"
        )));
    }
    let (lo, hi) = EXAMPLE1_INPUT_RANGE;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(m * 3);
    for _ in 0..3 * m {
        samples.push(rng.random_range(lo..=hi));
    }
    let noiseless: Vec<f64> = samples.chunks_exact(3).map(benchmark_posynomial).collect();
    let responses = if noise_ratio > 0.0 && m > 1 {
        let sd = noise_ratio * sample_std(&noiseless);
        let normal = Normal::new(0.0, sd).expect("valid std dev");
        noiseless
            .iter()
            .map(|&v| v + normal.sample(&mut rng))
            .collect()
    } else {
        noiseless
    };
    Dataset::new(samples, responses, 3)
}

fn sample_std(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    var.sqrt()
}

/// Reads a dataset from a CSV file with header `w_1,...,w_k,y`.
pub fn ingest(path: impl AsRef<Path>) -> Result<Dataset> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_dataset_csv(&text)
}

/// Parses the dataset CSV format; errors carry 1-based line numbers.
pub fn parse_dataset_csv(text: &str) -> Result<Dataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::data("dataset file is empty"))?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    if names.len() < 2 || names[names.len() - 1] != "y" {
        return Err(Error::data(format!(
            "dataset header must be w_1,...,w_k,y; got `{}`",
            header.trim()
        )));
    }
    let n_w = names.len() - 1;
    for (j, name) in names[..n_w].iter().enumerate() {
        let expected = format!("w_{}", j + 1);
        if *name != expected {
            return Err(Error::data(format!(
                "dataset header column {} is `{name}`, expected `{expected}`",
                j + 1
            )));
        }
    }
    let mut rows = Vec::new();
    for (line_idx, line) in lines {
        let row_no = line_idx + 1;
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != n_w + 1 {
            return Err(Error::data(format!(
                "line {row_no}: expected {} comma-separated values, found {}",
                n_w + 1,
                cells.len()
            )));
        }
        let mut w = Vec::with_capacity(n_w);
        for (j, cell) in cells.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| {
                Error::data(format!(
                    "line {row_no}: `{cell}` in column {} is not a number",
                    names[j]
                ))
            })?;
            if j < n_w {
                if value <= 0.0 || !value.is_finite() {
                    return Err(Error::data(format!(
                        "line {row_no}: {} = {value} must be strictly positive",
                        names[j]
                    )));
                }
                w.push(value);
            } else {
                if !value.is_finite() {
                    return Err(Error::data(format!(
                        "line {row_no}: y = {value} is not finite"
                    )));
                }
                rows.push((std::mem::take(&mut w), value));
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::data("dataset file has a header but no samples"));
    }
    Dataset::from_rows(rows)
}

/// Writes a dataset in the CSV layout accepted by [`ingest`], with shortest
/// round-trip float formatting.
pub fn write_dataset_csv(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    for j in 0..data.num_vars() {
        out.push_str(&format!("w_{},", j + 1));
    }
    out.push_str("y\n");
    for k in 0..data.len() {
        for v in data.sample(k) {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{}\n", data.responses()[k]));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Result of a leave-one-out validation pass.
#[derive(Debug, Clone, PartialEq)]
pub struct LooReport {
    /// Sample indices inside the margin-shrunk hyperrectangle, ascending.
    pub validated: Vec<usize>,
    /// Per-point relative errors `nu_j`, aligned with `validated`.
    pub point_errors: Vec<f64>,
    /// `AE = sqrt(sum_j nu_j^2)`.
    pub accumulated_error: f64,
}

/// Leave-one-out validation over the points of the margin-shrunk observed
/// hyperrectangle: for each such point, fit on the remaining data and score the
/// held-out response. `boundary_margin` is the per-side fraction of each
/// observed range excluded from validation; an empty validation set is
/// reported, not an error.
pub fn loo_validate(
    data: &Dataset,
    grid: &ExponentGrid,
    settings: &FitSettings,
    gamma: f64,
    boundary_margin: f64,
) -> Result<LooReport> {
    if data.len() < 2 {
        return Err(Error::data(
            "leave-one-out validation needs at least 2 samples",
        ));
    }
    if !(0.0..0.5).contains(&boundary_margin) {
        return Err(Error::config(format!(
            "boundary margin must lie in [0, 0.5), got {boundary_margin}"
        )));
    }
    let ranges = data.ranges();
    let validated: Vec<usize> = (0..data.len())
        .filter(|&k| {
            data.sample(k).iter().zip(&ranges).all(|(&v, &(lo, hi))| {
                let span = hi - lo;
                v >= lo + boundary_margin * span && v <= hi - boundary_margin * span
            })
        })
        .collect();
    if validated.is_empty() {
        return Ok(LooReport {
            validated,
            point_errors: Vec::new(),
            accumulated_error: 0.0,
        });
    }

    let basis = MonomialBasis::from_grid(grid);
    let y_loo_norm = validated
        .iter()
        .map(|&k| data.responses()[k] * data.responses()[k])
        .sum::<f64>()
        .sqrt();
    if y_loo_norm == 0.0 {
        return Err(Error::data(
            "validation responses are all zero; relative errors undefined",
        ));
    }

    let mut point_errors = Vec::with_capacity(validated.len());
    for &k in &validated {
        let training = data.without_sample(k);
        let design = DesignMatrix::build(&basis, &training)?.into_shared();
        let (solution, _, _) = fit(&design, training.responses(), settings, gamma, &mut NoTrace)?;
        let mut prediction = 0.0;
        for (i, &xi) in solution.x.iter().enumerate() {
            if xi != 0.0 {
                prediction += xi * eval_monomial(basis.exponents(i), data.sample(k))?;
            }
        }
        point_errors.push((data.responses()[k] - prediction).abs() / y_loo_norm);
    }
    let accumulated_error = point_errors.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(LooReport {
        validated,
        point_errors,
        accumulated_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parse_small_dataset() {
        let data = parse_dataset_csv("w_1,w_2,y\n1.0,2.0,3.0\n4.0,5.0,-6.0\n").unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data.num_vars(), 2);
        assert_eq!(data.sample(1), &[4.0, 5.0]);
        assert_eq!(data.responses(), &[3.0, -6.0]);
    }

    #[test]
    fn ingest_diagnostics_carry_row_numbers() {
        let err = parse_dataset_csv("w_1,y\n0.0,1.0\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(err.to_string().contains("w_1"), "{err}");

        let err = parse_dataset_csv("w_1,y\n1.0,oops\n").unwrap_err();
        assert!(err.to_string().contains("not a number"), "{err}");

        let err = parse_dataset_csv("w_1,w_3,y\n1.0,1.0,1.0\n").unwrap_err();
        assert!(err.to_string().contains("w_2"), "{err}");

        let err = parse_dataset_csv("w_1,y\n1.0\n").unwrap_err();
        assert!(err.to_string().contains("expected 2"), "{err}");

        assert!(parse_dataset_csv("w_1,y\n").is_err());
        assert!(parse_dataset_csv("").is_err());
    }

    #[test]
    fn dataset_csv_round_trip() {
        let data = generate_example1(3, 7, 0.01).unwrap();
        let dir = std::env::temp_dir().join("posyid-csv-roundtrip");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("data.csv");
        write_dataset_csv(&data, &path).unwrap();
        let back = ingest(&path).unwrap();
        assert_eq!(data, back);
    }

    #[test]
    fn uniform_weights_and_sigma_rules() {
        let design = DesignMatrix::from_columns(vec![1.0, 2.0, 2.0, 1.0], 2, 2).unwrap();
        let scheme = WeightScheme {
            kind: WeightKind::Uniform,
            gamma: 785.0,
            sigma_rule: SigmaRule::FractionOfGamma,
        };
        let (weights, sigma) = make_weights(&scheme, &design).unwrap();
        assert_eq!(weights, vec![785.0, 785.0]);
        assert_relative_eq!(sigma, 78.5);
    }

    #[test]
    fn colnorm_weights_scale_by_squared_norms() {
        // Equal column norms give uniform weights.
        let design = DesignMatrix::from_columns(vec![1.0, 2.0, 2.0, 1.0], 2, 2).unwrap();
        let scheme = WeightScheme {
            kind: WeightKind::ColNorm,
            gamma: 0.5,
            sigma_rule: SigmaRule::FractionOfMinLambda,
        };
        let (weights, sigma) = make_weights(&scheme, &design).unwrap();
        assert_eq!(weights, vec![2.5, 2.5]);
        assert_relative_eq!(sigma, 0.25);

        // Distinct norms: sigma follows the smallest weight.
        let design = DesignMatrix::from_columns(vec![1.0, 1.0, 3.0, 4.0], 2, 2).unwrap();
        let (weights, sigma) = make_weights(&scheme, &design).unwrap();
        assert_eq!(weights, vec![1.0, 12.5]);
        assert_relative_eq!(sigma, 0.1);

        assert!(make_weights(
            &WeightScheme {
                kind: WeightKind::Uniform,
                gamma: 0.0,
                sigma_rule: SigmaRule::FractionOfGamma
            },
            &design
        )
        .is_err());
    }

    #[test]
    fn sweep_spec_gammas_are_log_spaced() {
        let spec = SweepSpec {
            gamma_min: 1e-5,
            gamma_max: 1e-2,
            count: 4,
        };
        let gammas = spec.gammas();
        assert_eq!(gammas.len(), 4);
        assert_relative_eq!(gammas[0], 1e-5, max_relative = 1e-12);
        assert_relative_eq!(gammas[1], 1e-4, max_relative = 1e-12);
        assert_relative_eq!(gammas[3], 1e-2, max_relative = 1e-12);
        assert!(SweepSpec {
            gamma_min: 0.0,
            gamma_max: 1.0,
            count: 3
        }
        .validate()
        .is_err());
        assert!(SweepSpec {
            gamma_min: 1.0,
            gamma_max: 2.0,
            count: 1
        }
        .validate()
        .is_err());
    }

    #[test]
    fn sweep_extremes_behave() {
        let data = generate_example1(11, 40, 0.0).unwrap();
        let grid = ExponentGrid::new(vec![
            vec![0.0, 0.5, 2.0],
            vec![-2.0, 0.0, 1.5, 3.2],
            vec![-1.0, 0.0, 1.0, 3.0],
        ])
        .unwrap();
        let basis = MonomialBasis::from_grid(&grid);
        let design = DesignMatrix::build(&basis, &data).unwrap().into_shared();
        let settings = FitSettings::default();
        let spec = SweepSpec {
            gamma_min: 1e-6,
            gamma_max: 1e3,
            count: 3,
        };
        let rows = sweep(&design, data.responses(), &settings, &spec, 2).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.windows(2).all(|w| w[0].gamma < w[1].gamma));
        // Huge gamma drives the solution to zero: cardinality 0, RE = 1.
        let last = &rows[2];
        assert_eq!(last.cardinality, 0);
        assert_relative_eq!(last.relative_error, 1.0, max_relative = 1e-12);
        // Tiny gamma on noiseless data fits well.
        assert!(
            rows[0].relative_error < 1e-3,
            "RE = {}",
            rows[0].relative_error
        );
        assert!(rows.iter().all(|r| r.error.is_none()));

        let csv = pareto_to_csv(&rows);
        assert!(csv.starts_with("gamma,cardinality,relative_error,gap,converged,wall_time_s\n"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn generator_is_deterministic_and_noise_free_at_zero_ratio() {
        let a = generate_example1(42, 25, 0.0).unwrap();
        let b = generate_example1(42, 25, 0.0).unwrap();
        assert_eq!(a, b);
        for k in 0..a.len() {
            let w = a.sample(k);
            assert!(w.iter().all(|&v| (0.2..=3.2).contains(&v)));
            assert_eq!(a.responses()[k], benchmark_posynomial(w));
        }
        assert_ne!(generate_example1(43, 25, 0.0).unwrap(), a);
    }

    #[test]
    fn generator_noise_ratio_is_calibrated() {
        let noisy = generate_example1(7, 600, 0.01).unwrap();
        let clean = generate_example1(7, 600, 0.0).unwrap();
        let noise: Vec<f64> = noisy
            .responses()
            .iter()
            .zip(clean.responses())
            .map(|(a, b)| a - b)
            .collect();
        let ratio = sample_std(&noise) / sample_std(clean.responses());
        assert!(
            (0.008..=0.012).contains(&ratio),
            "noise/signal std ratio {ratio}"
        );
    }

    #[test]
    fn loo_margins_filter_points() {
        let data = generate_example1(5, 30, 0.0).unwrap();
        let grid = ExponentGrid::new(vec![vec![0.0, 1.0], vec![0.0, 1.5], vec![0.0, 3.0]]).unwrap();
        let settings = FitSettings {
            solver: SolverConfig {
                gap_tolerance: 1e-4,
                ..Default::default()
            },
            ..Default::default()
        };
        let all = loo_validate(&data, &grid, &settings, 1e-3, 0.0).unwrap();
        assert_eq!(all.validated.len(), data.len());
        let inner = loo_validate(&data, &grid, &settings, 1e-3, 0.3).unwrap();
        assert!(inner.validated.len() < all.validated.len());
        assert!(!inner.validated.is_empty());
        // AE is the root of the summed squared point errors, same summation order.
        let expected = inner.point_errors.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert_eq!(inner.accumulated_error, expected);

        assert!(loo_validate(&data, &grid, &settings, 1e-3, 0.6).is_err());
    }

    #[test]
    fn loo_empty_validation_set_is_reported_not_fatal() {
        // Two samples differing in every coordinate: both sit on the boundary
        // of their observed ranges, so any positive margin excludes them.
        let data = Dataset::from_rows(vec![
            (vec![1.0, 2.0, 3.0], 10.0),
            (vec![2.0, 3.0, 1.0], 20.0),
        ])
        .unwrap();
        let grid = ExponentGrid::new(vec![vec![0.0, 1.0]; 3]).unwrap();
        let report = loo_validate(&data, &grid, &FitSettings::default(), 0.1, 0.2).unwrap();
        assert!(report.validated.is_empty());
        assert!(report.point_errors.is_empty());
        assert_eq!(report.accumulated_error, 0.0);
    }
}
