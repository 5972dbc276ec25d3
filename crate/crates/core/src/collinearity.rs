//! Variance inflation factors, the sample-size adjusted VIF and the
//! condition-number / correlation-determinant diagnostics.
//!
//! The adjusted VIF of predictor `j` is `a(n, k) * VIF(j)` with
//! `a(n, k) = (n - k + 1) / (n - 1)`, i.e. the VIF recomputed from the
//! adjusted R² of the auxiliary regression. It penalises models with many
//! predictors so that a large `k` alone does not push the measure past the
//! usual threshold of 10.

use indexmap::IndexMap;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::dataset::{design_with_intercept, Dataset};
use crate::error::{Error, Result};
use crate::linalg::{center_columns, centered_sum_squares, correlation_matrix, PivotedQr};
use crate::ols::{fit_design, INTERCEPT};

/// `R²_j` at or above `1 - EXACT_COLLINEARITY` is reported as an error.
pub const EXACT_COLLINEARITY: f64 = 1e-12;

/// Smallest eigenvalue ratio treated as non-singular by [`condition_number`].
pub const NEAR_SINGULAR_RATIO: f64 = 1e-14;

pub const DEFAULT_THRESHOLD: f64 = 10.0;

/// Per-column values keyed by predictor name, in dataset order.
pub type ColumnMap = IndexMap<String, f64>;

/// The VIF weight `a(n,k)`, its square root, and `b(n,k) = 1 / sqrt(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjustmentFactors {
    pub a: f64,
    pub sqrt_a: f64,
    pub b: f64,
}

/// Defined for `n >= k >= 2`. The `n == k` column is kept so the standard
/// grid can be filled; no model with zero residual degrees of freedom is
/// ever fitted.
pub fn adjustment_factors(n: usize, k: usize) -> Result<AdjustmentFactors> {
    if n < k || k < 2 || n < 3 {
        return Err(Error::InvalidDesign { n, k });
    }
    let a = (n - k + 1) as f64 / (n - 1) as f64;
    let sqrt_a = a.sqrt();
    Ok(AdjustmentFactors { a, sqrt_a, b: 1.0 / sqrt_a })
}

/// VIF of every predictor from its auxiliary regression on the remaining
/// predictors plus intercept.
pub fn vif_all(data: &Dataset) -> Result<ColumnMap> {
    let p = data.n_predictors();
    let run = |j: usize| auxiliary_vif(data, j);
    #[cfg(feature = "parallel")]
    let values: Vec<Result<f64>> = {
        use rayon::prelude::*;
        (0..p).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Result<f64>> = (0..p).map(run).collect();

    let mut out = ColumnMap::with_capacity(p);
    for (name, v) in data.names().iter().zip(values) {
        out.insert(name.clone(), v?);
    }
    Ok(out)
}

fn auxiliary_vif(data: &Dataset, j: usize) -> Result<f64> {
    let target = data.column(j);
    let others: Vec<usize> = (0..data.n_predictors()).filter(|&c| c != j).collect();
    if others.is_empty() {
        // intercept-only auxiliary regression: R² is 0 by definition
        if centered_sum_squares(target) == 0.0 {
            return Err(Error::ConstantColumn(data.names()[j].clone()));
        }
        return Ok(1.0);
    }
    let x = design_with_intercept(data.columns(), Some(&others));
    let mut names = vec![INTERCEPT.to_string()];
    names.extend(others.iter().map(|&c| data.names()[c].clone()));
    let fit = fit_design(target, x, names).map_err(|e| match e {
        Error::DegenerateResponse => Error::ConstantColumn(data.names()[j].clone()),
        other => other,
    })?;
    if fit.r2 >= 1.0 - EXACT_COLLINEARITY {
        return Err(Error::ExactCollinearity(data.names()[j].clone()));
    }
    Ok(1.0 / (1.0 - fit.r2))
}

/// Adjusted VIF, `a(n,k) * VIF(j)` for every predictor.
pub fn avif_all(data: &Dataset) -> Result<ColumnMap> {
    let a = adjustment_factors(data.n(), data.k())?.a;
    let mut v = vif_all(data)?;
    v.values_mut().for_each(|x| *x *= a);
    Ok(v)
}

/// VIFs of the columns of `predictors` (no intercept column) from a single
/// QR factorisation of the centred matrix:
/// `VIF_j = ||x_j - mean||² * [(X_c^T X_c)^{-1}]_jj`.
///
/// Used by the simulation sweeps where hundreds of designs are scored; it is
/// checked against [`vif_all`] in the tests.
pub fn vif_from_columns(predictors: &DMatrix<f64>) -> Result<Vec<f64>> {
    let p = predictors.ncols();
    if p == 0 {
        return Err(Error::EmptyDesign);
    }
    if p == 1 {
        return Ok(vec![1.0]);
    }
    let centred = center_columns(predictors);
    let norms: Vec<f64> = centred.column_iter().map(|c| c.norm_squared()).collect();
    if let Some(j) = norms.iter().position(|&s| s == 0.0) {
        return Err(Error::ConstantColumn(format!("#{j}")));
    }
    let qr = PivotedQr::new(centred);
    if !qr.is_full_rank() {
        let j = qr.dependent_columns()[0];
        return Err(Error::ExactCollinearity(format!("#{j}")));
    }
    Ok(qr
        .inverse_gram_diagonal()
        .iter()
        .zip(&norms)
        .map(|(d, s)| d * s)
        .collect())
}

/// Largest VIF among `predictors`; the aVIF maximum is `a(n, k)` times this.
pub fn max_vif_of_columns(predictors: &DMatrix<f64>) -> Result<f64> {
    Ok(vif_from_columns(predictors)?.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// Condition number of the intercept-augmented design after scaling every
/// column to unit length: `sqrt(lambda_max / lambda_min)` of the scaled
/// cross-product. Returns `f64::INFINITY` when the design is numerically
/// singular.
pub fn condition_number(data: &Dataset) -> Result<f64> {
    condition_number_of(&data.design())
}

pub fn condition_number_of(x: &DMatrix<f64>) -> Result<f64> {
    if x.nrows() == 0 || x.ncols() == 0 {
        return Err(Error::EmptyDesign);
    }
    let mut scaled = x.clone();
    for mut col in scaled.column_iter_mut() {
        let norm = col.norm();
        if norm == 0.0 {
            return Ok(f64::INFINITY);
        }
        col.unscale_mut(norm);
    }
    let gram = scaled.tr_mul(&scaled);
    let eig = SymmetricEigen::new(gram).eigenvalues;
    let max = eig.max();
    let min = eig.min();
    if min <= NEAR_SINGULAR_RATIO * max {
        return Ok(f64::INFINITY);
    }
    Ok((max / min).sqrt())
}

/// Determinant of the predictors' sample correlation matrix.
pub fn correlation_det(data: &Dataset) -> Result<f64> {
    let r = correlation_matrix(data.columns()).map_err(|j| Error::ConstantColumn(data.names()[j].clone()))?;
    Ok(match r.cholesky() {
        Some(ch) => ch.l().diagonal().iter().map(|d| d * d).product(),
        None => 0.0,
    })
}

/// Every diagnostic for one dataset, with VIF and aVIF flags kept apart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollinearityReport {
    pub vif: ColumnMap,
    pub avif: ColumnMap,
    pub weight_a: f64,
    #[serde(with = "crate::serde_float")]
    pub condition_number: f64,
    pub corr_det: f64,
    pub n: usize,
    pub k: usize,
    pub threshold: f64,
    /// Columns with `VIF > threshold`.
    pub vif_flags: Vec<String>,
    /// Columns with `aVIF > threshold`.
    pub avif_flags: Vec<String>,
    /// Columns flagged by the VIF but not by the aVIF.
    pub flagged_by_vif_only: Vec<String>,
}

pub fn diagnose(data: &Dataset, threshold: f64) -> Result<CollinearityReport> {
    let factors = adjustment_factors(data.n(), data.k())?;
    let vif = vif_all(data)?;
    let avif: ColumnMap = vif.iter().map(|(c, v)| (c.clone(), factors.a * v)).collect();
    let over = |m: &ColumnMap| -> Vec<String> {
        m.iter().filter(|(_, &v)| v > threshold).map(|(c, _)| c.clone()).collect()
    };
    let vif_flags = over(&vif);
    let avif_flags = over(&avif);
    let flagged_by_vif_only = vif_flags.iter().filter(|c| !avif_flags.contains(c)).cloned().collect();
    Ok(CollinearityReport {
        condition_number: condition_number(data)?,
        corr_det: correlation_det(data)?,
        weight_a: factors.a,
        n: data.n(),
        k: data.k(),
        threshold,
        vif,
        avif,
        vif_flags,
        avif_flags,
        flagged_by_vif_only,
    })
}
