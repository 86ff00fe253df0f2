//! On-demand access to columns of the kernel matrix `Phi' Phi + sigma^2 I`,
//! with an optional LRU cache so repeated sweeps do not pay the `O(mn)`
//! column evaluation every time.

use std::collections::HashMap;

use super::ProblemData;

/// Computes column `i` of `Phi' Phi + sigma^2 I` in `O(mn)`.
pub fn kernel_column(problem: &ProblemData, i: usize) -> Vec<f64> {
    let design = problem.design();
    let phi_i = design.column(i);
    let mut col: Vec<f64> = (0..design.num_columns())
        .map(|j| dot(design.column(j), phi_i))
        .collect();
    col[i] += problem.sigma() * problem.sigma();
    col
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LRU cache of kernel columns bounded by a byte budget. A zero budget
/// disables caching and every access recomputes into a scratch buffer.
#[derive(Debug)]
pub struct KernelCache {
    max_columns: usize,
    clock: u64,
    columns: HashMap<usize, (u64, Vec<f64>)>,
    scratch: Vec<f64>,
}

impl KernelCache {
    /// Cache sized for kernel columns of length `n` within `budget_bytes`.
    pub fn with_budget(budget_bytes: usize, n: usize) -> Self {
        let column_bytes = n.max(1) * std::mem::size_of::<f64>();
        KernelCache {
            max_columns: budget_bytes / column_bytes,
            clock: 0,
            columns: HashMap::new(),
            scratch: Vec::new(),
        }
    }

    /// No caching; every access recomputes.
    pub fn disabled() -> Self {
        Self::with_budget(0, 1)
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Kernel column `i` of `problem`, cached when the budget allows.
    ///
    /// The cache must not be shared across problems; it keys on the column
    /// index only.
    pub fn column(&mut self, problem: &ProblemData, i: usize) -> &[f64] {
        if self.max_columns == 0 {
            self.scratch = kernel_column(problem, i);
            return &self.scratch;
        }
        self.clock += 1;
        let clock = self.clock;
        if let Some(entry) = self.columns.get_mut(&i) {
            entry.0 = clock;
        } else {
            if self.columns.len() >= self.max_columns {
                if let Some((&oldest, _)) = self.columns.iter().min_by_key(|(_, (stamp, _))| *stamp)
                {
                    self.columns.remove(&oldest);
                }
            }
            self.columns.insert(i, (clock, kernel_column(problem, i)));
        }
        &self.columns[&i].1
    }
}
