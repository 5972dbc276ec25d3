//! End-to-end run of the 35-coefficient example: full fit, diagnostics,
//! decision table, classic backward elimination, adjusted stepwise
//! elimination and the model comparison.

use serde::{Deserialize, Serialize};

use super::generators::{gen_example_dataset, ExampleDataset, X32Form};
use crate::collinearity::{diagnose, CollinearityReport, DEFAULT_THRESHOLD};
use crate::error::Result;
use crate::inference::{decision_table, DecisionRecord, Rule, SignificanceOption};
use crate::ols::{fit_ols, OlsFit};
use crate::selection::{backward_eliminate, compare_models, ModelComparison, SelectionTrace};

/// Secondary level reported next to the stepwise model.
pub const RELAXED_ALPHA: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleRun {
    pub n: usize,
    pub seed: u64,
    pub alpha: f64,
    pub x32_form: X32Form,
    pub true_coefficients: Vec<f64>,
    pub initial_fit: OlsFit,
    pub collinearity: CollinearityReport,
    pub decisions: Vec<DecisionRecord>,
    /// Predictors classed as option c in the full model.
    pub option_c: Vec<String>,
    pub elimination: SelectionTrace,
    pub stepwise: SelectionTrace,
    /// Decision table of the stepwise model at the relaxed 10% level.
    pub stepwise_decisions_relaxed: Vec<DecisionRecord>,
    pub comparison: ModelComparison,
}

pub fn run_example(n: usize, seed: u64, alpha: f64, x32_form: X32Form) -> Result<ExampleRun> {
    let ExampleDataset {
        data,
        true_coefficients,
        ..
    } = gen_example_dataset(n, seed, x32_form)?;
    let initial_fit = fit_ols(&data)?;
    let collinearity = diagnose(&data, DEFAULT_THRESHOLD)?;
    let decisions = decision_table(&initial_fit, alpha)?;
    let option_c = decisions[1..]
        .iter()
        .filter(|d| d.option == SignificanceOption::C)
        .map(|d| d.column.clone())
        .collect();
    let elimination = backward_eliminate(&data, Rule::Classic, alpha)?;
    let stepwise = backward_eliminate(&data, Rule::Adjusted, alpha)?;
    let stepwise_decisions_relaxed = decision_table(&stepwise.final_fit, RELAXED_ALPHA)?;
    let comparison = compare_models(&[
        ("initial", &initial_fit),
        ("elimination", &elimination.final_fit),
        ("stepwise", &stepwise.final_fit),
    ])?;
    Ok(ExampleRun {
        n,
        seed,
        alpha,
        x32_form,
        true_coefficients,
        initial_fit,
        collinearity,
        decisions,
        option_c,
        elimination,
        stepwise,
        stepwise_decisions_relaxed,
        comparison,
    })
}
