//! Ordinary least squares with an always-present intercept.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dataset::{design_with_intercept, Dataset};
use crate::distributions::f_sf;
use crate::error::{Error, Result};
use crate::linalg::{centered_sum_squares, PivotedQr};
use crate::simulation::rng::fingerprint;

pub const INTERCEPT: &str = "(Intercept)";

/// Estimate, standard error and `t_exp = |estimate| / std_error`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefTest {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    #[serde(with = "crate::serde_float")]
    pub t_exp: f64,
}

/// Goodness-of-fit summary for a fitted model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitStatistics {
    pub r2: f64,
    pub adj_r2: f64,
    /// `n ln(2 pi) + n ln(SCR / n) + n + 2 (k + 1)`
    #[serde(with = "crate::serde_float")]
    pub aic: f64,
    #[serde(with = "crate::serde_float")]
    pub f_stat: f64,
    #[serde(with = "crate::serde_float")]
    pub f_pvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OlsFit {
    /// Coefficient labels, intercept first.
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    pub scr: f64,
    pub sigma_hat: f64,
    pub r2: f64,
    pub adj_r2: f64,
    #[serde(with = "crate::serde_float")]
    pub aic: f64,
    #[serde(with = "crate::serde_float")]
    pub f_stat: f64,
    #[serde(with = "crate::serde_float")]
    pub f_pvalue: f64,
    pub coef_tests: Vec<CoefTest>,
    pub n: usize,
    pub k: usize,
    pub df_resid: usize,
    /// Hash of the response bits; lets model comparison reject fits made on
    /// different responses.
    pub response_digest: u64,
}

impl OlsFit {
    pub fn statistics(&self) -> FitStatistics {
        FitStatistics {
            r2: self.r2,
            adj_r2: self.adj_r2,
            aic: self.aic,
            f_stat: self.f_stat,
            f_pvalue: self.f_pvalue,
        }
    }

    /// Names of the non-intercept coefficients.
    pub fn predictor_names(&self) -> &[String] {
        &self.names[1..]
    }
}

/// Fits `y = X beta + u` with the intercept prepended to the dataset's
/// predictors.
pub fn fit_ols(data: &Dataset) -> Result<OlsFit> {
    let cols: Vec<usize> = (0..data.n_predictors()).collect();
    fit_subset(data, &cols)
}

/// Fits the model using only the listed predictor columns. An empty subset
/// gives the intercept-only model.
pub fn fit_subset(data: &Dataset, cols: &[usize]) -> Result<OlsFit> {
    let x = design_with_intercept(data.columns(), Some(cols));
    let mut names = Vec::with_capacity(cols.len() + 1);
    names.push(INTERCEPT.to_string());
    names.extend(cols.iter().map(|&j| data.names()[j].clone()));
    fit_design(data.response(), x, names)
}

pub(crate) fn fit_design(y: &[f64], x: DMatrix<f64>, names: Vec<String>) -> Result<OlsFit> {
    let (n, k) = x.shape();
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "response has {} rows, design has {n}",
            y.len()
        )));
    }
    if n <= k {
        return Err(Error::TooFewRows { n, k });
    }

    let qr = PivotedQr::new(x.clone());
    if !qr.is_full_rank() {
        let dep = qr.dependent_columns().into_iter().map(|j| names[j].clone()).collect();
        return Err(Error::RankDeficient(dep));
    }

    let coefficients = qr.solve(y);
    let fitted = &x * nalgebra::DVector::from_column_slice(&coefficients);
    let residuals: Vec<f64> = y.iter().zip(fitted.iter()).map(|(a, b)| a - b).collect();
    let scr: f64 = residuals.iter().map(|e| e * e).sum();
    let df_resid = n - k;
    let sigma2 = scr / df_resid as f64;
    let sigma_hat = sigma2.sqrt();

    let inv_diag = qr.inverse_gram_diagonal();
    let coef_tests = names
        .iter()
        .zip(&coefficients)
        .zip(&inv_diag)
        .map(|((name, &estimate), &d)| {
            let std_error = (sigma2 * d).sqrt();
            let t_exp = if std_error > 0.0 {
                (estimate / std_error).abs()
            } else if estimate == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            CoefTest {
                name: name.clone(),
                estimate,
                std_error,
                t_exp,
            }
        })
        .collect();

    let stats = statistics_from(y, scr, k)?;
    Ok(OlsFit {
        names,
        coefficients,
        residuals,
        scr,
        sigma_hat,
        r2: stats.r2,
        adj_r2: stats.adj_r2,
        aic: stats.aic,
        f_stat: stats.f_stat,
        f_pvalue: stats.f_pvalue,
        coef_tests,
        n,
        k,
        df_resid,
        response_digest: fingerprint(y),
    })
}

/// R², adjusted R², AIC and the global F test for a fit made on `data`.
pub fn fit_statistics(fit: &OlsFit, data: &Dataset) -> Result<FitStatistics> {
    if fit.n != data.n() {
        return Err(Error::DimensionMismatch("fit and dataset differ in n".into()));
    }
    statistics_from(data.response(), fit.scr, fit.k)
}

fn statistics_from(y: &[f64], scr: f64, k: usize) -> Result<FitStatistics> {
    let n = y.len();
    let tss = centered_sum_squares(y);
    if tss <= 0.0 {
        return Err(Error::DegenerateResponse);
    }
    let nf = n as f64;
    let df_resid = (n - k) as f64;
    let r2 = (1.0 - scr / tss).clamp(0.0, 1.0);
    let adj_r2 = 1.0 - (nf - 1.0) / df_resid * (1.0 - r2);
    let aic = nf * (2.0 * PI).ln() + nf * (scr / nf).ln() + nf + 2.0 * (k as f64 + 1.0);
    let (f_stat, f_pvalue) = if k > 1 {
        let df_model = (k - 1) as f64;
        let f = ((tss - scr) / df_model) / (scr / df_resid);
        let f = if f.is_nan() { f64::INFINITY } else { f.max(0.0) };
        (f, f_sf(f, df_model, df_resid))
    } else {
        (0.0, 1.0)
    };
    Ok(FitStatistics {
        r2,
        adj_r2,
        aic,
        f_stat,
        f_pvalue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn exact_line_is_recovered() {
        let x: Vec<f64> = (0..10).map(|i| i as f64 * 0.7 - 1.0).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 + 3.0 * v).collect();
        let d = Dataset::new(y, vec![x], names(&["x2"])).unwrap();
        let fit = fit_ols(&d).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 3.0).abs() < 1e-12);
        assert!(fit.scr < 1e-24);
        assert_eq!(fit.r2, 1.0);
        assert!((fit.adj_r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_predictor_gives_zero_r2() {
        // centred y orthogonal to x
        let x = vec![-1.0, 1.0, -1.0, 1.0, 0.0, 0.0];
        let y = vec![1.0, 1.0, -1.0, -1.0, 2.0, -2.0];
        let d = Dataset::new(y, vec![x], names(&["x"])).unwrap();
        let fit = fit_ols(&d).unwrap();
        assert!(fit.r2.abs() < 1e-14);
        let n = 6.0;
        assert!((fit.adj_r2 - (1.0 - (n - 1.0) / (n - 2.0))).abs() < 1e-12);
    }

    #[test]
    fn constant_response_is_degenerate() {
        let d = Dataset::new(vec![3.0; 5], vec![vec![1.0, 2.0, 3.0, 5.0, 8.0]], names(&["x"])).unwrap();
        assert_eq!(fit_ols(&d).unwrap_err(), Error::DegenerateResponse);
    }

    #[test]
    fn duplicated_column_is_rank_deficient() {
        let a = vec![1.0, 2.0, 4.0, 3.0, 0.0, 7.0];
        let d = Dataset::new(
            vec![1.0, 0.0, 2.0, 5.0, 1.0, 3.0],
            vec![a.clone(), a.iter().map(|v| v * 3.0 - 1.0).collect()],
            names(&["a", "b"]),
        )
        .unwrap();
        match fit_ols(&d).unwrap_err() {
            Error::RankDeficient(cols) => assert_eq!(cols.len(), 1),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn intercept_only_subset() {
        let d = Dataset::new(vec![1.0, 2.0, 3.0, 6.0], vec![vec![0.0, 1.0, 0.0, 1.0]], names(&["a"])).unwrap();
        let fit = fit_subset(&d, &[]).unwrap();
        assert_eq!(fit.k, 1);
        assert!((fit.coefficients[0] - 3.0).abs() < 1e-12);
        assert_eq!(fit.r2, 0.0);
        assert_eq!(fit.f_pvalue, 1.0);
    }

    #[test]
    fn fit_statistics_recomputes_stored_values() {
        let d = Dataset::new(
            vec![1.0, 3.0, 2.0, 5.0, 4.0, 6.0, 8.0],
            vec![vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0], vec![1.0, -1.0, 0.5, 0.2, -0.3, 0.9, 0.0]],
            names(&["a", "b"]),
        )
        .unwrap();
        let fit = fit_ols(&d).unwrap();
        assert_eq!(fit_statistics(&fit, &d).unwrap(), fit.statistics());
        assert_eq!(fit.df_resid, 4);
        let sum: f64 = fit.residuals.iter().sum();
        assert!(sum.abs() < 1e-10);
    }
}
