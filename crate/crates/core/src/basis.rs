//! Monomial dictionaries: per-variable exponent sets, their Cartesian-product
//! basis, and evaluation of the resulting design matrices on positive data.

use std::collections::HashSet;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Beyond this magnitude of `alpha * ln(w)` a single power factor is at risk of
/// overflowing, so monomial evaluation switches to a log-sum formulation that
/// only exponentiates the final sum.
const LOG_OVERFLOW_GUARD: f64 = 500.0;

/// Slack allowed when checking that `step` divides `max - min` in a grid range.
const RANGE_STEP_SLACK: f64 = 1e-9;

/// Per-variable candidate exponent sets.
///
/// Each variable gets a finite, strictly increasing list of exponents; the
/// monomial dictionary is the Cartesian product of these lists.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentGrid {
    grids: Vec<Vec<f64>>,
}

impl ExponentGrid {
    /// Builds a grid from explicit per-variable exponent lists.
    ///
    /// Every list must be nonempty, finite and strictly increasing.
    pub fn new(grids: Vec<Vec<f64>>) -> Result<Self> {
        if grids.is_empty() {
            return Err(Error::config("exponent grid needs at least one variable"));
        }
        for (j, grid) in grids.iter().enumerate() {
            if grid.is_empty() {
                return Err(Error::config(format!(
                    "exponent grid for variable {} is empty",
                    j + 1
                )));
            }
            for (t, &value) in grid.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::config(format!(
                        "exponent grid for variable {} contains a non-finite value at position {}",
                        j + 1,
                        t
                    )));
                }
                if t > 0 && value <= grid[t - 1] {
                    return Err(Error::config(format!(
                        "exponent grid for variable {} must be strictly increasing \
                         (violated at position {}: {} after {})",
                        j + 1,
                        t,
                        value,
                        grid[t - 1]
                    )));
                }
            }
        }
        Ok(ExponentGrid { grids })
    }

    /// Expands `(min, max, step)` into the list `min, min + step, ..., max`.
    ///
    /// `step` must divide the interval within a small absolute slack.
    pub fn expand_range(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(Error::config("grid range bounds and step must be finite"));
        }
        if step <= 0.0 {
            return Err(Error::config(format!(
                "grid range step must be > 0, got {step}"
            )));
        }
        if max < min {
            return Err(Error::config(format!(
                "grid range has max {max} below min {min}"
            )));
        }
        let count = ((max - min) / step).round() as usize;
        if (min + count as f64 * step - max).abs() > RANGE_STEP_SLACK {
            return Err(Error::config(format!(
                "grid range step {step} does not divide the interval [{min}, {max}]"
            )));
        }
        Ok((0..=count).map(|t| min + t as f64 * step).collect())
    }

    /// Parses a grid description in TOML form. One `[[variable]]` table per
    /// input variable, in order, each giving either an explicit list
    /// `values = [...]` or a range `min = ..., max = ..., step = ...`.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: GridFile =
            toml::from_str(text).map_err(|e| Error::config(format!("grid file: {e}")))?;
        if file.variable.is_empty() {
            return Err(Error::config("grid file declares no [[variable]] tables"));
        }
        let mut grids = Vec::with_capacity(file.variable.len());
        for (j, var) in file.variable.into_iter().enumerate() {
            let grid = match (var.values, var.min, var.max, var.step) {
                (Some(values), None, None, None) => values,
                (None, Some(min), Some(max), Some(step)) => Self::expand_range(min, max, step)?,
                _ => {
                    return Err(Error::config(format!(
                        "grid variable {}: give either `values` or all of `min`, `max`, `step`",
                        j + 1
                    )))
                }
            };
            grids.push(grid);
        }
        Self::new(grids)
    }

    /// Reads and parses a grid file from disk.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::from_toml_str(&text)
    }

    pub fn num_vars(&self) -> usize {
        self.grids.len()
    }

    pub fn grid(&self, var: usize) -> &[f64] {
        &self.grids[var]
    }

    /// Number of monomials in the Cartesian-product basis.
    pub fn basis_len(&self) -> usize {
        self.grids.iter().map(Vec::len).product()
    }
}

#[derive(Debug, Deserialize)]
struct GridFile {
    #[serde(default)]
    variable: Vec<GridVariable>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridVariable {
    values: Option<Vec<f64>>,
    min: Option<f64>,
    max: Option<f64>,
    step: Option<f64>,
}

/// A dictionary of exponent vectors, one per monomial.
///
/// The row order is part of the contract: when built from an [`ExponentGrid`],
/// rows enumerate the Cartesian product lexicographically with the last
/// variable's index varying fastest, so column indices of downstream design
/// matrices are reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialBasis {
    /// Row-major `n x n_w` exponent storage.
    exponents: Vec<f64>,
    n: usize,
    n_w: usize,
}

impl MonomialBasis {
    /// Enumerates the full Cartesian product of the grid's exponent sets.
    pub fn from_grid(grid: &ExponentGrid) -> Self {
        let n_w = grid.num_vars();
        let n = grid.basis_len();
        let mut exponents = Vec::with_capacity(n * n_w);
        let mut index = vec![0usize; n_w];
        for _ in 0..n {
            for (j, &t) in index.iter().enumerate() {
                exponents.push(grid.grid(j)[t]);
            }
            // Odometer increment, last variable fastest.
            for j in (0..n_w).rev() {
                index[j] += 1;
                if index[j] < grid.grid(j).len() {
                    break;
                }
                index[j] = 0;
            }
        }
        MonomialBasis { exponents, n, n_w }
    }

    /// Builds a basis from explicit exponent rows, rejecting duplicates.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::config("monomial basis needs at least one row"));
        }
        let n_w = rows[0].len();
        if n_w == 0 {
            return Err(Error::config(
                "monomial basis rows must have at least one exponent",
            ));
        }
        let mut seen = HashSet::with_capacity(rows.len());
        let mut exponents = Vec::with_capacity(rows.len() * n_w);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_w {
                return Err(Error::config(format!(
                    "monomial basis row {i} has {} exponents, expected {n_w}",
                    row.len()
                )));
            }
            let key: Vec<u64> = row.iter().map(|v| v.to_bits()).collect();
            if !seen.insert(key) {
                return Err(Error::config(format!(
                    "monomial basis row {i} duplicates an earlier row"
                )));
            }
            exponents.extend_from_slice(row);
        }
        Ok(MonomialBasis {
            exponents,
            n: rows.len(),
            n_w,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn num_vars(&self) -> usize {
        self.n_w
    }

    /// Exponent vector of monomial `i`.
    pub fn exponents(&self, i: usize) -> &[f64] {
        &self.exponents[i * self.n_w..(i + 1) * self.n_w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.exponents.chunks_exact(self.n_w)
    }
}

/// Evaluates the monomial `prod_j w_j^{alpha_j}` at a strictly positive point.
///
/// Fractional and negative exponents make non-positive inputs a hard error.
/// When any single factor risks overflow the product is evaluated as
/// `exp(sum_j alpha_j ln w_j)`, which only overflows if the full product does.
pub fn eval_monomial(alpha: &[f64], w: &[f64]) -> Result<f64> {
    if alpha.len() != w.len() {
        return Err(Error::data(format!(
            "monomial has {} exponents but the input point has {} coordinates",
            alpha.len(),
            w.len()
        )));
    }
    let mut guarded = false;
    for (j, &wj) in w.iter().enumerate() {
        if wj <= 0.0 || !wj.is_finite() {
            return Err(Error::data(format!(
                "monomial evaluation requires strictly positive inputs; coordinate {} is {}",
                j + 1,
                wj
            )));
        }
        if (alpha[j] * wj.ln()).abs() > LOG_OVERFLOW_GUARD {
            guarded = true;
        }
    }
    if guarded {
        let log_sum: f64 = alpha.iter().zip(w).map(|(&a, &wj)| a * wj.ln()).sum();
        Ok(log_sum.exp())
    } else {
        Ok(alpha.iter().zip(w).map(|(&a, &wj)| wj.powf(a)).product())
    }
}

/// Measured input/output samples on the positive orthant.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// Row-major `m x n_w` inputs.
    samples: Vec<f64>,
    responses: Vec<f64>,
    m: usize,
    n_w: usize,
}

impl Dataset {
    /// `samples` is row-major `m x n_w`; every entry must be strictly positive.
    pub fn new(samples: Vec<f64>, responses: Vec<f64>, n_w: usize) -> Result<Self> {
        if n_w == 0 {
            return Err(Error::data("dataset needs at least one input variable"));
        }
        if responses.is_empty() {
            return Err(Error::data("dataset needs at least one sample"));
        }
        if samples.len() != responses.len() * n_w {
            return Err(Error::data(format!(
                "dataset has {} input values, expected {} samples x {} variables",
                samples.len(),
                responses.len(),
                n_w
            )));
        }
        let m = responses.len();
        for k in 0..m {
            for j in 0..n_w {
                let v = samples[k * n_w + j];
                if v <= 0.0 || !v.is_finite() {
                    return Err(Error::data(format!(
                        "sample {} has non-positive input w_{} = {}",
                        k + 1,
                        j + 1,
                        v
                    )));
                }
            }
            if !responses[k].is_finite() {
                return Err(Error::data(format!(
                    "sample {} has non-finite response",
                    k + 1
                )));
            }
        }
        Ok(Dataset {
            samples,
            responses,
            m,
            n_w,
        })
    }

    pub fn from_rows(rows: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        let n_w = rows.first().map(|(w, _)| w.len()).unwrap_or(0);
        let mut samples = Vec::with_capacity(rows.len() * n_w);
        let mut responses = Vec::with_capacity(rows.len());
        for (w, y) in rows {
            if w.len() != n_w {
                return Err(Error::data(
                    "dataset rows have inconsistent input dimensions",
                ));
            }
            samples.extend_from_slice(&w);
            responses.push(y);
        }
        Self::new(samples, responses, n_w)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn num_vars(&self) -> usize {
        self.n_w
    }

    pub fn sample(&self, k: usize) -> &[f64] {
        &self.samples[k * self.n_w..(k + 1) * self.n_w]
    }

    pub fn responses(&self) -> &[f64] {
        &self.responses
    }

    /// Copy of the dataset with sample `k` removed.
    pub fn without_sample(&self, k: usize) -> Dataset {
        let mut samples = Vec::with_capacity((self.m - 1) * self.n_w);
        let mut responses = Vec::with_capacity(self.m - 1);
        for i in 0..self.m {
            if i != k {
                samples.extend_from_slice(self.sample(i));
                responses.push(self.responses[i]);
            }
        }
        Dataset {
            samples,
            responses,
            m: self.m - 1,
            n_w: self.n_w,
        }
    }

    /// Per-variable `(min, max)` over the samples.
    pub fn ranges(&self) -> Vec<(f64, f64)> {
        let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); self.n_w];
        for k in 0..self.m {
            for (j, range) in ranges.iter_mut().enumerate() {
                let v = self.sample(k)[j];
                range.0 = range.0.min(v);
                range.1 = range.1.max(v);
            }
        }
        ranges
    }
}

/// Monomial evaluations of a basis on a dataset, stored column-major so the
/// solver can stream whole feature columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    /// Column-major `m x n` values.
    values: Vec<f64>,
    m: usize,
    n: usize,
    column_sq_norms: Vec<f64>,
}

impl DesignMatrix {
    /// Evaluates every basis monomial at every sample.
    ///
    /// Entries are evaluated one by one through [`eval_monomial`], so batch
    /// construction is bit-identical to per-column reconstruction.
    pub fn build(basis: &MonomialBasis, data: &Dataset) -> Result<Self> {
        if basis.num_vars() != data.num_vars() {
            return Err(Error::data(format!(
                "basis has {} variables but the dataset has {}",
                basis.num_vars(),
                data.num_vars()
            )));
        }
        let m = data.len();
        let n = basis.len();
        let mut values = Vec::with_capacity(m * n);
        let mut column_sq_norms = Vec::with_capacity(n);
        for i in 0..n {
            let alpha = basis.exponents(i);
            let mut sq = 0.0;
            for k in 0..m {
                let v = eval_monomial(alpha, data.sample(k))?;
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: k, col: i });
                }
                sq += v * v;
                values.push(v);
            }
            if !sq.is_finite() {
                return Err(Error::NonFiniteEntry { row: m - 1, col: i });
            }
            column_sq_norms.push(sq);
        }
        Ok(DesignMatrix {
            values,
            m,
            n,
            column_sq_norms,
        })
    }

    /// Wraps raw column-major values; entries must be strictly positive and finite.
    pub fn from_columns(values: Vec<f64>, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 || values.len() != m * n {
            return Err(Error::data(format!(
                "design matrix storage of {} values does not match {m} x {n}",
                values.len()
            )));
        }
        for (pos, &v) in values.iter().enumerate() {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::data(format!(
                    "design matrix entry at sample {}, column {} must be strictly positive and finite, got {v}",
                    pos % m + 1,
                    pos / m + 1
                )));
            }
        }
        let column_sq_norms = values
            .chunks_exact(m)
            .map(|col| col.iter().map(|v| v * v).sum())
            .collect();
        Ok(DesignMatrix {
            values,
            m,
            n,
            column_sq_norms,
        })
    }

    pub fn num_samples(&self) -> usize {
        self.m
    }

    pub fn num_columns(&self) -> usize {
        self.n
    }

    pub fn column(&self, i: usize) -> &[f64] {
        &self.values[i * self.m..(i + 1) * self.m]
    }

    /// Squared Euclidean norm of column `i`, computed at construction.
    pub fn column_sq_norm(&self, i: usize) -> f64 {
        self.column_sq_norms[i]
    }

    pub fn column_sq_norms(&self) -> &[f64] {
        &self.column_sq_norms
    }

    /// Copies the listed columns into a new matrix (keeps their order).
    pub fn select_columns(&self, indices: &[usize]) -> DesignMatrix {
        let mut values = Vec::with_capacity(indices.len() * self.m);
        let mut column_sq_norms = Vec::with_capacity(indices.len());
        for &i in indices {
            values.extend_from_slice(self.column(i));
            column_sq_norms.push(self.column_sq_norms[i]);
        }
        DesignMatrix {
            values,
            m: self.m,
            n: indices.len(),
            column_sq_norms,
        }
    }

    /// `Phi x - y`.
    pub fn residual(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.m);
        let mut r: Vec<f64> = y.iter().map(|&v| -v).collect();
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0.0 {
                for (rk, &phi) in r.iter_mut().zip(self.column(i)) {
                    *rk += phi * xi;
                }
            }
        }
        r
    }

    pub fn into_shared(self) -> Arc<DesignMatrix> {
        Arc::new(self)
    }
}
