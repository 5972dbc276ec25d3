//! Multicollinearity diagnostics for linear regression.
//!
//! * [`ols`]: least squares with an always-present intercept.
//! * [`collinearity`]: VIF, adjusted VIF (`a(n,k) * VIF`), condition number
//!   and correlation determinant.
//! * [`inference`]: classic and adjusted individual-significance rules and
//!   the a/b/c outcome classes.
//! * [`selection`]: backward elimination, forward selection and model
//!   comparison.
//! * [`simulation`]: seeded Monte Carlo designs and sweeps.
//! * [`io`]: CSV input, series export and the JSON report.
//!
//! The VIF only sees essential multicollinearity (relations among the
//! non-constant predictors); relations with the constant term are invisible
//! to it and to the adjusted VIF.

pub mod collinearity;
pub mod dataset;
pub mod distributions;
pub mod error;
pub mod inference;
pub mod io;
pub mod linalg;
pub mod ols;
pub mod selection;
mod serde_float;
pub mod simulation;
pub mod tables;

pub use collinearity::{
    adjustment_factors, avif_all, condition_number, correlation_det, diagnose, vif_all, AdjustmentFactors,
    CollinearityReport,
};
pub use dataset::Dataset;
pub use distributions::t_quantile;
pub use error::{Error, Result};
pub use inference::{decide, decision_table, DecisionRecord, Rule, SignificanceOption, Thresholds};
pub use ols::{fit_ols, fit_statistics, fit_subset, FitStatistics, OlsFit};
pub use selection::{backward_eliminate, compare_models, forward_select, Direction, ModelComparison, SelectionTrace};
