use serde::{Deserialize, Serialize};

use super::generators::{
    gen_example_dataset, independent_normal_columns, GammaLatents, X32Form, EXAMPLE_PREDICTORS,
};
use super::rng::sub_seed;
use crate::collinearity::{adjustment_factors, max_vif_of_columns, DEFAULT_THRESHOLD};
use crate::error::{Error, Result};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Design {
    #[serde(rename = "indep")]
    IndependentNormals,
    #[serde(rename = "gamma")]
    GammaCorrelated,
    #[serde(rename = "example")]
    ExampleModel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Vif,
    Avif,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub design: Design,
    pub n: usize,
    /// Largest number of predictors swept; models run up to
    /// `k = max_predictors + 1` coefficients (and always `k < n`).
    pub max_predictors: usize,
    /// Only read by [`Design::GammaCorrelated`].
    pub gamma: f64,
    pub seed: u64,
    pub threshold: f64,
    pub measure: Measure,
    /// Only read by [`Design::ExampleModel`].
    pub x32_form: X32Form,
    /// When false the sweep stops once both the VIF and the aVIF maxima have
    /// crossed the threshold; `threshold_k` is unaffected.
    pub full_series: bool,
}

impl ExperimentConfig {
    /// Defaults: threshold 10, VIF measure, and the largest sweep the design
    /// supports (39 predictors for the independent design, 34 for the
    /// example, `n - 2` for the gamma design).
    pub fn new(design: Design, n: usize, seed: u64) -> Self {
        let max_predictors = match design {
            Design::IndependentNormals => 39.min(n.saturating_sub(2)),
            Design::GammaCorrelated => n.saturating_sub(2),
            Design::ExampleModel => EXAMPLE_PREDICTORS.min(n.saturating_sub(2)),
        };
        Self {
            design,
            n,
            max_predictors,
            gamma: 0.0,
            seed,
            threshold: DEFAULT_THRESHOLD,
            measure: Measure::Vif,
            x32_form: X32Form::Product,
            full_series: true,
        }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_measure(mut self, measure: Measure) -> Self {
        self.measure = measure;
        self
    }

    pub fn with_max_predictors(mut self, p: usize) -> Self {
        self.max_predictors = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n <= 3 {
            return Err(Error::InvalidDims(format!("n must exceed 3, got {}", self.n)));
        }
        if self.max_predictors < 2 || self.max_predictors >= self.n {
            return Err(Error::InvalidDims(format!(
                "max_predictors must be in [2, n), got {} with n = {}",
                self.max_predictors, self.n
            )));
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(Error::InvalidGamma(self.gamma));
        }
        if self.design == Design::ExampleModel {
            if self.max_predictors > EXAMPLE_PREDICTORS {
                return Err(Error::InvalidDims(format!(
                    "the example design has {EXAMPLE_PREDICTORS} predictors"
                )));
            }
            if self.n <= EXAMPLE_PREDICTORS + 1 {
                return Err(Error::InvalidDims("the example design needs n > 35".into()));
            }
        }
        Ok(())
    }

    /// Largest model size swept.
    pub fn max_k(&self) -> usize {
        (self.max_predictors + 1).min(self.n - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub k: usize,
    #[serde(with = "crate::serde_float")]
    pub max_vif: f64,
    #[serde(with = "crate::serde_float")]
    pub max_avif: f64,
}

impl SeriesPoint {
    pub fn value(&self, measure: Measure) -> f64 {
        match measure {
            Measure::Vif => self.max_vif,
            Measure::Avif => self.max_avif,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub measure: Measure,
    pub series: Vec<SeriesPoint>,
    /// Smallest `k` whose maximum measure exceeds the threshold; `None` is
    /// reported as "NE".
    pub threshold_k: Option<usize>,
}

impl ExperimentResult {
    fn from_series(config: ExperimentConfig, series: Vec<SeriesPoint>) -> Self {
        let threshold_k = series
            .iter()
            .find(|p| p.value(config.measure) > config.threshold)
            .map(|p| p.k);
        Self {
            seed: config.seed,
            measure: config.measure,
            config,
            series,
            threshold_k,
        }
    }

    /// The same sweep scored under the other measure.
    pub fn with_measure(&self, measure: Measure) -> Self {
        let mut config = self.config;
        config.measure = measure;
        Self::from_series(config, self.series.clone())
    }
}

/// Source of the predictor matrix for each model size.
enum Sweep {
    Nested(DMatrix<f64>),
    Gamma(GammaLatents, f64),
}

impl Sweep {
    fn build(config: &ExperimentConfig) -> Result<Self> {
        let p = config.max_k() - 1;
        Ok(match config.design {
            Design::IndependentNormals => Sweep::Nested(independent_normal_columns(config.n, p, config.seed).0),
            Design::GammaCorrelated => {
                Sweep::Gamma(GammaLatents::draw(config.n, config.max_k(), config.seed), config.gamma)
            }
            Design::ExampleModel => {
                let e = gen_example_dataset(config.n, config.seed, config.x32_form)?;
                Sweep::Nested(e.data.columns().columns(0, p).into_owned())
            }
        })
    }

    fn point(&self, n: usize, k: usize) -> Result<SeriesPoint> {
        let max_vif = match self {
            Sweep::Nested(m) => max_vif_of_columns(&m.columns(0, k - 1).into_owned())?,
            Sweep::Gamma(lat, gamma) => max_vif_of_columns(&lat.design(k, *gamma))?,
        };
        let a = adjustment_factors(n, k)?.a;
        Ok(SeriesPoint {
            k,
            max_vif,
            max_avif: a * max_vif,
        })
    }
}

/// Sweeps `k = 3..=max_k`, recording the maximum VIF and aVIF of each model,
/// and reports the first `k` at which the configured measure exceeds the
/// threshold.
pub fn find_threshold_k(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let sweep = Sweep::build(config)?;
    let ks: Vec<usize> = (3..=config.max_k()).collect();

    let series = if config.full_series {
        let run = |&k: &usize| sweep.point(config.n, k);
        #[cfg(feature = "parallel")]
        let points: Vec<Result<SeriesPoint>> = {
            use rayon::prelude::*;
            ks.par_iter().map(run).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let points: Vec<Result<SeriesPoint>> = ks.iter().map(run).collect();
        points.into_iter().collect::<Result<Vec<_>>>()?
    } else {
        let mut out = Vec::new();
        for k in ks {
            let pt = sweep.point(config.n, k)?;
            out.push(pt);
            if pt.max_vif > config.threshold && pt.max_avif > config.threshold {
                break;
            }
        }
        out
    };
    Ok(ExperimentResult::from_series(*config, series))
}

/// The VIF and aVIF readings of one sweep, for plotting both curves.
pub fn run_figure_experiment(config: &ExperimentConfig) -> Result<(ExperimentResult, ExperimentResult)> {
    let mut cfg = *config;
    cfg.full_series = true;
    let base = find_threshold_k(&cfg)?;
    Ok((base.with_measure(Measure::Vif), base.with_measure(Measure::Avif)))
}

/// Runs `replicates` independent sweeps with seeds `sub_seed(config.seed, i)`.
/// The output order follows the replicate index whatever the scheduling.
pub fn replicate(config: &ExperimentConfig, replicates: usize) -> Result<Vec<ExperimentResult>> {
    let run = |i: usize| find_threshold_k(&config.with_seed(sub_seed(config.seed, i as u64)));
    #[cfg(feature = "parallel")]
    let results: Vec<Result<ExperimentResult>> = {
        use rayon::prelude::*;
        (0..replicates).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<ExperimentResult>> = (0..replicates).map(run).collect();
    results.into_iter().collect()
}

/// Median of threshold-k values with "NE" ranked above every finite `k`.
/// Returns `None` when the median itself is NE.
pub fn median_threshold_k(values: &[Option<usize>]) -> Option<f64> {
    let mut v: Vec<f64> = values
        .iter()
        .map(|x| x.map_or(f64::INFINITY, |k| k as f64))
        .collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len();
    let med = if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    };
    med.is_finite().then_some(med)
}
