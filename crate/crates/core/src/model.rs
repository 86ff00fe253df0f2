//! Identified posynomial models: sparse coefficient/exponent term lists with
//! evaluation, scoring and JSON serialization.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::basis::{eval_monomial, Dataset, DesignMatrix, MonomialBasis};
use crate::error::{Error, Result};

/// One monomial term `coef * w^exponents`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub exponents: Vec<f64>,
}

/// A posynomial `sum_i coef_i * w^alpha_i` on the positive orthant.
///
/// Coefficients are strictly positive (zero terms are dropped) and exponent
/// vectors are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "ModelDoc")]
pub struct PosynomialModel {
    n_w: usize,
    terms: Vec<Term>,
}

/// Serialized form: `{"n_w": ..., "terms": [{"coef": ..., "exponents": [...]}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModelDoc {
    n_w: usize,
    terms: Vec<Term>,
}

impl From<PosynomialModel> for ModelDoc {
    fn from(model: PosynomialModel) -> Self {
        ModelDoc {
            n_w: model.n_w,
            terms: model.terms,
        }
    }
}

impl<'de> Deserialize<'de> for PosynomialModel {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let doc = ModelDoc::deserialize(deserializer)?;
        PosynomialModel::new(doc.n_w, doc.terms).map_err(serde::de::Error::custom)
    }
}

impl PosynomialModel {
    /// Validates and wraps a term list.
    pub fn new(n_w: usize, terms: Vec<Term>) -> Result<Self> {
        if n_w == 0 {
            return Err(Error::model("input dimension must be at least 1"));
        }
        let mut seen = HashSet::with_capacity(terms.len());
        for (t, term) in terms.iter().enumerate() {
            if term.coef <= 0.0 || !term.coef.is_finite() {
                return Err(Error::model(format!(
                    "term {t} has coefficient {}, coefficients must be finite and > 0",
                    term.coef
                )));
            }
            if term.exponents.len() != n_w {
                return Err(Error::model(format!(
                    "term {t} has {} exponents, expected {n_w}",
                    term.exponents.len()
                )));
            }
            if term.exponents.iter().any(|a| !a.is_finite()) {
                return Err(Error::model(format!("term {t} has a non-finite exponent")));
            }
            let key: Vec<u64> = term.exponents.iter().map(|a| a.to_bits()).collect();
            if !seen.insert(key) {
                return Err(Error::model(format!(
                    "term {t} duplicates an earlier exponent vector"
                )));
            }
        }
        Ok(PosynomialModel { n_w, terms })
    }

    /// Turns a solver iterate into a model: keeps `(x_i, alpha_i)` for every
    /// `x_i > threshold`, in basis order. Entries below `-threshold` violate
    /// the posynomial sign contract and are an error.
    pub fn from_solution(basis: &MonomialBasis, x: &[f64], threshold: f64) -> Result<Self> {
        if x.len() != basis.len() {
            return Err(Error::model(format!(
                "solution has {} coefficients but the basis has {} monomials",
                x.len(),
                basis.len()
            )));
        }
        if threshold < 0.0 || threshold.is_nan() {
            return Err(Error::model(format!(
                "threshold must be >= 0, got {threshold}"
            )));
        }
        let mut terms = Vec::new();
        for (i, &xi) in x.iter().enumerate() {
            if xi < -threshold {
                return Err(Error::model(format!(
                    "coefficient {i} is {xi}; posynomial terms must be nonnegative"
                )));
            }
            if xi > threshold {
                terms.push(Term {
                    coef: xi,
                    exponents: basis.exponents(i).to_vec(),
                });
            }
        }
        PosynomialModel::new(basis.num_vars(), terms)
    }

    pub fn num_vars(&self) -> usize {
        self.n_w
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates the posynomial at a strictly positive point.
    pub fn predict(&self, w: &[f64]) -> Result<f64> {
        if w.len() != self.n_w {
            return Err(Error::data(format!(
                "input point has {} coordinates, model expects {}",
                w.len(),
                self.n_w
            )));
        }
        let mut value = 0.0;
        for term in &self.terms {
            value += term.coef * eval_monomial(&term.exponents, w)?;
        }
        Ok(value)
    }

    /// Predictions for every sample of a dataset.
    pub fn predict_dataset(&self, data: &Dataset) -> Result<Vec<f64>> {
        (0..data.len())
            .map(|k| self.predict(data.sample(k)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_json(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn read_json(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Relative fitting error `||Phi x - y||_2 / ||y||_2` of a coefficient vector.
pub fn relative_error(design: &DesignMatrix, x: &[f64], y: &[f64]) -> Result<f64> {
    if y.len() != design.num_samples() || x.len() != design.num_columns() {
        return Err(Error::data(format!(
            "relative error: got {} coefficients and {} responses for a {} x {} design",
            x.len(),
            y.len(),
            design.num_samples(),
            design.num_columns()
        )));
    }
    let y_norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if y_norm == 0.0 {
        return Err(Error::data(
            "relative error is undefined for a zero response",
        ));
    }
    let r = design.residual(x, y);
    Ok(r.iter().map(|v| v * v).sum::<f64>().sqrt() / y_norm)
}

/// Relative error `||y_hat - y||_2 / ||y||_2` of precomputed predictions.
pub fn relative_error_of_predictions(y_hat: &[f64], y: &[f64]) -> Result<f64> {
    if y_hat.len() != y.len() {
        return Err(Error::data("prediction and response lengths differ"));
    }
    let y_norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if y_norm == 0.0 {
        return Err(Error::data(
            "relative error is undefined for a zero response",
        ));
    }
    let err = y_hat
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Ok(err / y_norm)
}
