use std::collections::HashSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Response vector plus named predictor columns. The intercept is implicit
/// and never stored as a column.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    response: Vec<f64>,
    columns: DMatrix<f64>,
    names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from a response vector and predictor columns.
    ///
    /// Requires at least one predictor, `n > k` where `k` counts the
    /// intercept, finite values throughout and unique column names.
    pub fn new(response: Vec<f64>, columns: Vec<Vec<f64>>, names: Vec<String>) -> Result<Self> {
        let n = response.len();
        if columns.len() != names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns but {} names",
                columns.len(),
                names.len()
            )));
        }
        if let Some((j, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "column `{}` has {} rows, response has {n}",
                names[j],
                c.len()
            )));
        }
        let p = columns.len();
        let flat: Vec<f64> = columns.into_iter().flatten().collect();
        Self::from_matrix(response, DMatrix::from_vec(n, p, flat), names)
    }

    /// Same as [`Dataset::new`] but takes an `n x (k-1)` matrix directly.
    pub fn from_matrix(response: Vec<f64>, columns: DMatrix<f64>, names: Vec<String>) -> Result<Self> {
        let n = response.len();
        if columns.nrows() != n {
            return Err(Error::DimensionMismatch(format!(
                "predictor matrix has {} rows, response has {n}",
                columns.nrows()
            )));
        }
        if columns.ncols() != names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns but {} names",
                columns.ncols(),
                names.len()
            )));
        }
        let k = columns.ncols() + 1;
        if k < 2 {
            return Err(Error::InvalidDataset("at least one predictor column is required".into()));
        }
        if n <= k {
            return Err(Error::TooFewRows { n, k });
        }
        if response.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset("response contains non-finite values".into()));
        }
        for (j, name) in names.iter().enumerate() {
            if columns.column(j).iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidDataset(format!("column `{name}` contains non-finite values")));
            }
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidDataset(format!("duplicate column name `{name}`")));
            }
        }
        Ok(Self {
            response,
            columns,
            names,
        })
    }

    /// Observation count.
    pub fn n(&self) -> usize {
        self.response.len()
    }

    /// Coefficient count including the intercept.
    pub fn k(&self) -> usize {
        self.columns.ncols() + 1
    }

    /// Number of predictor columns (`k - 1`).
    pub fn n_predictors(&self) -> usize {
        self.columns.ncols()
    }

    pub fn response(&self) -> &[f64] {
        &self.response
    }

    pub fn columns(&self) -> &DMatrix<f64> {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[f64] {
        let n = self.n();
        &self.columns.as_slice()[j * n..(j + 1) * n]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|c| c == name)
    }

    /// Keeps only the listed predictor columns, in the given order.
    pub fn select(&self, cols: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut m = DMatrix::zeros(n, cols.len());
        for (dst, &src) in cols.iter().enumerate() {
            m.set_column(dst, &self.columns.column(src));
        }
        let names = cols.iter().map(|&j| self.names[j].clone()).collect();
        Self::from_matrix(self.response.clone(), m, names)
    }

    /// Appends a predictor column.
    pub fn with_column(&self, name: impl Into<String>, values: &[f64]) -> Result<Self> {
        let n = self.n();
        if values.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "new column has {} rows, dataset has {n}",
                values.len()
            )));
        }
        let p = self.n_predictors();
        let mut m = self.columns.clone().resize_horizontally(p + 1, 0.0);
        m.column_mut(p).copy_from_slice(values);
        let mut names = self.names.clone();
        names.push(name.into());
        Self::from_matrix(self.response.clone(), m, names)
    }

    /// Replaces the response, keeping the predictors.
    pub fn with_response(&self, response: Vec<f64>) -> Result<Self> {
        Self::from_matrix(response, self.columns.clone(), self.names.clone())
    }

    /// `n x k` design with a leading column of ones.
    pub fn design(&self) -> DMatrix<f64> {
        design_with_intercept(&self.columns, None)
    }
}

/// Prepends an intercept column to `columns`, optionally restricted to a
/// subset of column indices.
pub(crate) fn design_with_intercept(columns: &DMatrix<f64>, subset: Option<&[usize]>) -> DMatrix<f64> {
    let n = columns.nrows();
    let idx: Vec<usize> = match subset {
        Some(s) => s.to_vec(),
        None => (0..columns.ncols()).collect(),
    };
    let mut x = DMatrix::zeros(n, idx.len() + 1);
    x.column_mut(0).fill(1.0);
    for (dst, &src) in idx.iter().enumerate() {
        x.set_column(dst + 1, &columns.column(src));
    }
    x
}
