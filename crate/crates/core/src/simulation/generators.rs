//! Seeded data generators for the three Monte Carlo designs.
//!
//! Predictor columns are drawn column by column from one stream, so the first
//! `p` columns of a larger draw equal a draw of `p` columns with the same
//! seed. Responses come from a separate sub-stream for the same reason.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::rng::{sub_seed, SplitMix64};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Means for the independent-normals design.
pub const INDEPENDENT_MEANS: [f64; 6] = [-5.0, -3.0, -1.0, 1.0, 3.0, 5.0];
/// Variances (not standard deviations) for the independent-normals design.
pub const INDEPENDENT_VARIANCES: [f64; 3] = [1.0, 9.0, 15.0];
/// Shared latent mean and standard deviation choices for the gamma design.
pub const GAMMA_LATENT_PARAMS: [f64; 4] = [2.0, 3.0, 4.0, 5.0];
pub const EXAMPLE_MEANS: [f64; 11] = [-10.0, -8.0, -6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0, 8.0, 10.0];
pub const EXAMPLE_SDS: [f64; 5] = [1.0, 2.0, 3.0, 4.0, 5.0];
pub const EXAMPLE_BETAS: [f64; 9] = [-7.0, -5.0, -3.0, -1.0, 0.0, 1.0, 3.0, 5.0, 7.0];
/// Standard deviations of the perturbations p1..p4 of the engineered columns.
pub const EXAMPLE_PERTURBATION_SDS: [f64; 4] = [2.0, 3.0, 2.0, 3.0];
pub const EXAMPLE_NOISE_SD: f64 = 7.0;
/// Base predictors X2..X31 plus engineered X32..X35.
pub const EXAMPLE_PREDICTORS: usize = 34;

const RESPONSE_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalParams {
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedData {
    pub data: Dataset,
    pub params: Vec<NormalParams>,
}

/// Predictor names `X2, X3, ...` matching the coefficient numbering where
/// the intercept is coefficient 1.
pub fn predictor_names(p: usize) -> Vec<String> {
    (0..p).map(|j| format!("X{}", j + 2)).collect()
}

fn unit_response(predictors: &DMatrix<f64>, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(sub_seed(seed, RESPONSE_STREAM));
    predictors
        .row_iter()
        .map(|row| 1.0 + row.sum() + rng.standard_normal())
        .collect()
}

/// Draws the first `p` independent-normal columns for `n` observations.
pub fn independent_normal_columns(n: usize, p: usize, seed: u64) -> (DMatrix<f64>, Vec<NormalParams>) {
    let mut rng = SplitMix64::new(seed);
    let mut m = DMatrix::zeros(n, p);
    let mut params = Vec::with_capacity(p);
    for j in 0..p {
        let mean = rng.choose(&INDEPENDENT_MEANS);
        let sd = rng.choose(&INDEPENDENT_VARIANCES).sqrt();
        for i in 0..n {
            m[(i, j)] = rng.normal(mean, sd);
        }
        params.push(NormalParams { mean, sd });
    }
    (m, params)
}

/// `p` independent normal predictors; each column's mean is drawn from
/// {±1, ±3, ±5} and its variance from {1, 9, 15}. The response
/// `1 + sum(X) + N(0, 1)` only fills the dataset shape.
pub fn gen_independent_normals(n: usize, p: usize, seed: u64) -> Result<GeneratedData> {
    if p < 1 || n <= p + 1 {
        return Err(Error::InvalidDims(format!("need n > p + 1 and p >= 1, got n = {n}, p = {p}")));
    }
    let (m, params) = independent_normal_columns(n, p, seed);
    let y = unit_response(&m, seed);
    Ok(GeneratedData {
        data: Dataset::from_matrix(y, m, predictor_names(p))?,
        params,
    })
}

/// Latent columns `M_2, M_3, ...` for the gamma-correlated design. One mean
/// and one standard deviation, each drawn from {2, 3, 4, 5}, are shared by
/// all latents.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaLatents {
    pub params: NormalParams,
    /// Column `c` holds `M_{c+2}`.
    pub latents: DMatrix<f64>,
}

impl GammaLatents {
    /// Draws latents `M_2..=M_{max_j}`.
    pub fn draw(n: usize, max_j: usize, seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let mean = rng.choose(&GAMMA_LATENT_PARAMS);
        let sd = rng.choose(&GAMMA_LATENT_PARAMS);
        let cols = max_j.saturating_sub(1);
        let mut latents = DMatrix::zeros(n, cols);
        for c in 0..cols {
            for i in 0..n {
                latents[(i, c)] = rng.normal(mean, sd);
            }
        }
        Self {
            params: NormalParams { mean, sd },
            latents,
        }
    }

    pub fn max_j(&self) -> usize {
        self.latents.ncols() + 1
    }

    /// Predictors of the model with `j` coefficients:
    /// `X_i = sqrt(1 - gamma²) M_i + gamma M_j` for `i = 2..=j`.
    pub fn design(&self, j: usize, gamma: f64) -> DMatrix<f64> {
        assert!(j >= 2 && j <= self.max_j(), "model size {j} outside latent range");
        let n = self.latents.nrows();
        let own = (1.0 - gamma * gamma).sqrt();
        let shared = self.latents.column(j - 2);
        DMatrix::from_fn(n, j - 1, |r, c| own * self.latents[(r, c)] + gamma * shared[r])
    }
}

/// Predictors `X_2..X_j` of the gamma-correlated design for the model with
/// `j` coefficients. Pairs among `X_2..X_{j-1}` have population correlation
/// `gamma²`; each of them correlates with `X_j` at `gamma`.
pub fn gen_gamma_correlated(n: usize, j: usize, gamma: f64, seed: u64) -> Result<Dataset> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidGamma(gamma));
    }
    if j < 3 || n <= j {
        return Err(Error::InvalidDims(format!("need n > j >= 3, got n = {n}, j = {j}")));
    }
    let m = GammaLatents::draw(n, j, seed).design(j, gamma);
    let y = unit_response(&m, seed);
    Dataset::from_matrix(y, m, predictor_names(j - 1))
}

/// How the first engineered column combines X2, X3 and X5.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum X32Form {
    /// `4 X2 - 3 X3 * X5 + p1` (elementwise product).
    #[default]
    Product,
    /// `4 X2 - 3 X3 + X5 + p1`.
    Additive,
}

/// The 35-coefficient example: 30 base predictors, four engineered ones,
/// and `y = X beta + u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleDataset {
    pub data: Dataset,
    /// 35 coefficients, intercept first.
    pub true_coefficients: Vec<f64>,
    /// Parameters of X2..X31.
    pub params: Vec<NormalParams>,
    /// p1..p4.
    pub perturbations: [Vec<f64>; 4],
    pub x32_form: X32Form,
}

/// Draw order: for X2..X31 a mean, a standard deviation and `n` values;
/// then p1..p4; then the 35 coefficients; then the noise `u ~ N(0, 7²)`.
pub fn gen_example_dataset(n: usize, seed: u64, x32_form: X32Form) -> Result<ExampleDataset> {
    if n <= EXAMPLE_PREDICTORS + 1 {
        return Err(Error::InvalidDims(format!("example design needs n > 35, got {n}")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut x = DMatrix::zeros(n, EXAMPLE_PREDICTORS);
    let mut params = Vec::with_capacity(30);
    for c in 0..30 {
        let mean = rng.choose(&EXAMPLE_MEANS);
        let sd = rng.choose(&EXAMPLE_SDS);
        for i in 0..n {
            x[(i, c)] = rng.normal(mean, sd);
        }
        params.push(NormalParams { mean, sd });
    }
    let perturbations = EXAMPLE_PERTURBATION_SDS.map(|sd| rng.normal_vec(n, 0.0, sd));
    // Xj lives in column j - 2
    let col = |j: usize| j - 2;
    for i in 0..n {
        let v: [f64; 18] = std::array::from_fn(|j| if j >= 2 { x[(i, col(j))] } else { 0.0 });
        let x32 = match x32_form {
            X32Form::Product => 4.0 * v[2] - 3.0 * v[3] * v[5],
            X32Form::Additive => 4.0 * v[2] - 3.0 * v[3] + v[5],
        } + perturbations[0][i];
        x[(i, col(32))] = x32;
        x[(i, col(33))] = v[7] - v[8] - perturbations[1][i];
        x[(i, col(34))] = 5.0 * v[10] - 3.0 * v[13] - perturbations[2][i];
        x[(i, col(35))] = v[15] + v[17] + perturbations[3][i];
    }
    let beta: Vec<f64> = (0..=EXAMPLE_PREDICTORS).map(|_| rng.choose(&EXAMPLE_BETAS)).collect();
    let y: Vec<f64> = (0..n)
        .map(|i| {
            let signal: f64 = beta[0] + (0..EXAMPLE_PREDICTORS).map(|c| beta[c + 1] * x[(i, c)]).sum::<f64>();
            signal + rng.normal(0.0, EXAMPLE_NOISE_SD)
        })
        .collect();
    Ok(ExampleDataset {
        data: Dataset::from_matrix(y, x, predictor_names(EXAMPLE_PREDICTORS))?,
        true_coefficients: beta,
        params,
        perturbations,
        x32_form,
    })
}
