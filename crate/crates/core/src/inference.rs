//! Individual significance tests under the classic rule
//! `t_exp > t_{n-k}(1 - alpha/2)` and the adjusted rule
//! `t_exp > sqrt(a(n,k)) * t_{n-k}(1 - alpha/2)`.
//!
//! Both comparisons are strict; a tie with the threshold does not reject.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::collinearity::adjustment_factors;
use crate::distributions::t_quantile;
use crate::error::{Error, Result};
use crate::ols::OlsFit;

pub const DEFAULT_ALPHA: f64 = 0.05;

/// Which threshold a selection procedure tests against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Classic,
    Adjusted,
}

impl Rule {
    pub fn rejects(self, record: &DecisionRecord) -> bool {
        match self {
            Rule::Classic => record.reject_classic,
            Rule::Adjusted => record.reject_adjusted,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Classic => "classic",
            Rule::Adjusted => "adjusted",
        })
    }
}

/// Outcome class of a coefficient under the two rules.
///
/// * `A`: rejected under both rules.
/// * `B`: rejected under neither.
/// * `C`: rejected only once the threshold is adjusted for the number of
///   predictors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignificanceOption {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

impl fmt::Display for SignificanceOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignificanceOption::A => "a",
            SignificanceOption::B => "b",
            SignificanceOption::C => "c",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub column: String,
    #[serde(with = "crate::serde_float")]
    pub t_exp: f64,
    pub t_crit: f64,
    pub at_crit: f64,
    pub reject_classic: bool,
    pub reject_adjusted: bool,
    pub option: SignificanceOption,
}

/// Critical values for one `(n, k, alpha)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub t_crit: f64,
    pub at_crit: f64,
    pub b: f64,
}

impl Thresholds {
    pub fn new(n: usize, k: usize, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidProbability(alpha));
        }
        let factors = adjustment_factors(n, k)?;
        let t_crit = t_quantile((n - k) as u64, 1.0 - alpha / 2.0)?;
        Ok(Self {
            n,
            k,
            alpha,
            t_crit,
            at_crit: factors.sqrt_a * t_crit,
            b: factors.b,
        })
    }

    pub fn decide(&self, column: impl Into<String>, t_exp: f64) -> DecisionRecord {
        let reject_classic = t_exp > self.t_crit;
        let reject_adjusted = t_exp > self.at_crit;
        let option = match (reject_classic, reject_adjusted) {
            (true, _) => SignificanceOption::A,
            (false, true) => SignificanceOption::C,
            (false, false) => SignificanceOption::B,
        };
        DecisionRecord {
            column: column.into(),
            t_exp,
            t_crit: self.t_crit,
            at_crit: self.at_crit,
            reject_classic,
            reject_adjusted,
            option,
        }
    }
}

/// Classifies a single `t_exp` for a model with `n` observations and `k`
/// coefficients.
pub fn decide(t_exp: f64, n: usize, k: usize, alpha: f64) -> Result<DecisionRecord> {
    if !(t_exp >= 0.0) {
        return Err(Error::InvalidDims(format!("t_exp must be non-negative, got {t_exp}")));
    }
    Ok(Thresholds::new(n, k, alpha)?.decide(String::new(), t_exp))
}

/// One record per coefficient of `fit`, intercept first.
pub fn decision_table(fit: &OlsFit, alpha: f64) -> Result<Vec<DecisionRecord>> {
    let th = Thresholds::new(fit.n, fit.k.max(2), alpha)?;
    let th = if fit.k < 2 {
        // intercept-only model: only the classic threshold exists
        let t_crit = t_quantile((fit.n - fit.k) as u64, 1.0 - alpha / 2.0)?;
        Thresholds {
            k: fit.k,
            t_crit,
            at_crit: t_crit,
            b: 1.0,
            ..th
        }
    } else {
        th
    };
    Ok(fit.coef_tests.iter().map(|c| th.decide(c.name.clone(), c.t_exp)).collect())
}
