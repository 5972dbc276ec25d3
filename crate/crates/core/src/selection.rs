//! Stepwise variable selection driven by the individual significance rules,
//! and side-by-side model comparison on adjusted R² and AIC.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::inference::{decision_table, Rule, Thresholds};
use crate::ols::{fit_subset, OlsFit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Backward,
    Forward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepAction {
    Removed,
    Added,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionStep {
    pub action: StepAction,
    pub column: String,
    /// `t_exp` of the column in the fit that triggered the step.
    #[serde(with = "crate::serde_float")]
    pub t_exp: f64,
    pub t_crit: f64,
    pub at_crit: f64,
    /// Coefficient count (intercept included) after the step.
    pub model_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionTrace {
    pub direction: Direction,
    pub rule: Rule,
    pub alpha: f64,
    pub steps: Vec<SelectionStep>,
    /// Retained predictor names, in dataset order.
    pub selected: Vec<String>,
    pub final_fit: OlsFit,
}

/// Repeatedly drops the non-intercept coefficient with the lowest `t_exp`
/// among those that fail `rule`, refitting after each removal, until every
/// retained coefficient passes. Ties go to the lowest column index.
pub fn backward_eliminate(data: &Dataset, rule: Rule, alpha: f64) -> Result<SelectionTrace> {
    let mut active: Vec<usize> = (0..data.n_predictors()).collect();
    let mut steps = Vec::new();
    loop {
        let fit = fit_subset(data, &active)?;
        let table = decision_table(&fit, alpha)?;
        // table[0] is the intercept, which is never eliminated
        let worst = table[1..]
            .iter()
            .enumerate()
            .filter(|(_, r)| !rule.rejects(r))
            .min_by(|(ia, a), (ib, b)| a.t_exp.total_cmp(&b.t_exp).then(active[*ia].cmp(&active[*ib])));
        let Some((pos, record)) = worst else {
            return Ok(SelectionTrace {
                direction: Direction::Backward,
                rule,
                alpha,
                steps,
                selected: active.iter().map(|&j| data.names()[j].clone()).collect(),
                final_fit: fit,
            });
        };
        let removed = active.remove(pos);
        steps.push(SelectionStep {
            action: StepAction::Removed,
            column: data.names()[removed].clone(),
            t_exp: record.t_exp,
            t_crit: record.t_crit,
            at_crit: record.at_crit,
            model_size: active.len() + 1,
        });
    }
}

struct Candidate {
    column: usize,
    t_exp: f64,
    thresholds: Thresholds,
}

fn score_candidate(data: &Dataset, active: &[usize], column: usize, alpha: f64) -> Result<Option<Candidate>> {
    let mut cols = active.to_vec();
    cols.push(column);
    let fit = match fit_subset(data, &cols) {
        Ok(f) => f,
        Err(Error::RankDeficient(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let thresholds = Thresholds::new(fit.n, fit.k, alpha)?;
    Ok(Some(Candidate {
        column,
        t_exp: fit.coef_tests.last().map(|c| c.t_exp).unwrap_or(0.0),
        thresholds,
    }))
}

/// Starts from the intercept-only model and adds, at each step, the
/// candidate whose refit `t_exp` is largest among those passing `rule`.
/// Stops when no candidate passes or the model would leave no residual
/// degrees of freedom.
pub fn forward_select(data: &Dataset, rule: Rule, alpha: f64) -> Result<SelectionTrace> {
    let mut active: Vec<usize> = Vec::new();
    let mut steps = Vec::new();
    loop {
        let candidates: Vec<usize> = (0..data.n_predictors()).filter(|j| !active.contains(j)).collect();
        if candidates.is_empty() || active.len() + 2 >= data.n() {
            break;
        }
        let score = |&j: &usize| score_candidate(data, &active, j, alpha);
        #[cfg(feature = "parallel")]
        let scored: Vec<Result<Option<Candidate>>> = {
            use rayon::prelude::*;
            candidates.par_iter().map(score).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let scored: Vec<Result<Option<Candidate>>> = candidates.iter().map(score).collect();

        let mut best: Option<Candidate> = None;
        for c in scored {
            let Some(c) = c? else { continue };
            let record = c.thresholds.decide("", c.t_exp);
            if !rule.rejects(&record) {
                continue;
            }
            // candidates are visited in column order, so strict > keeps the lowest index on ties
            if best.as_ref().map_or(true, |b| c.t_exp > b.t_exp) {
                best = Some(c);
            }
        }
        let Some(chosen) = best else { break };
        active.push(chosen.column);
        steps.push(SelectionStep {
            action: StepAction::Added,
            column: data.names()[chosen.column].clone(),
            t_exp: chosen.t_exp,
            t_crit: chosen.thresholds.t_crit,
            at_crit: chosen.thresholds.at_crit,
            model_size: active.len() + 1,
        });
    }
    active.sort_unstable();
    let final_fit = fit_subset(data, &active)?;
    Ok(SelectionTrace {
        direction: Direction::Forward,
        rule,
        alpha,
        steps,
        selected: active.iter().map(|&j| data.names()[j].clone()).collect(),
        final_fit,
    })
}

pub fn select(data: &Dataset, direction: Direction, rule: Rule, alpha: f64) -> Result<SelectionTrace> {
    match direction {
        Direction::Backward => backward_eliminate(data, rule, alpha),
        Direction::Forward => forward_select(data, rule, alpha),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub sigma_hat: f64,
    pub r2: f64,
    pub adj_r2: f64,
    #[serde(with = "crate::serde_float")]
    pub aic: f64,
    #[serde(with = "crate::serde_float")]
    pub f_stat: f64,
    #[serde(with = "crate::serde_float")]
    pub f_pvalue: f64,
    /// 1-based position in the ranking.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelComparison {
    /// Rows sorted by adjusted R² (descending), then AIC (ascending).
    pub rows: Vec<ComparisonRow>,
    pub best_by_adj_r2: Vec<String>,
    pub best_by_aic: Vec<String>,
    /// The two criteria pick different models.
    pub criteria_disagree: bool,
    /// The top two rows cannot be separated on either criterion.
    pub tie: bool,
}

/// Ranks fits of the same response. Disagreement between adjusted R² and
/// AIC is flagged, not resolved.
pub fn compare_models(fits: &[(&str, &OlsFit)]) -> Result<ModelComparison> {
    if let Some((_, first)) = fits.first() {
        if fits.iter().any(|(_, f)| f.response_digest != first.response_digest || f.n != first.n) {
            return Err(Error::MixedResponse);
        }
    }
    let mut rows: Vec<ComparisonRow> = fits
        .iter()
        .map(|(label, f)| ComparisonRow {
            label: label.to_string(),
            n: f.n,
            k: f.k,
            sigma_hat: f.sigma_hat,
            r2: f.r2,
            adj_r2: f.adj_r2,
            aic: f.aic,
            f_stat: f.f_stat,
            f_pvalue: f.f_pvalue,
            rank: 0,
        })
        .collect();
    rows.sort_by(|a, b| b.adj_r2.total_cmp(&a.adj_r2).then(a.aic.total_cmp(&b.aic)));
    for (i, r) in rows.iter_mut().enumerate() {
        r.rank = i + 1;
    }

    let best = |key: fn(&ComparisonRow) -> f64| -> Vec<String> {
        let Some(top) = rows.iter().map(key).reduce(f64::max) else {
            return Vec::new();
        };
        rows.iter().filter(|r| key(r) == top).map(|r| r.label.clone()).collect()
    };
    let best_by_adj_r2 = best(|r| r.adj_r2);
    let best_by_aic = best(|r| -r.aic);
    let criteria_disagree = !best_by_adj_r2.iter().any(|l| best_by_aic.contains(l));
    let tie = rows.len() > 1 && rows[0].adj_r2 == rows[1].adj_r2 && rows[0].aic == rows[1].aic;
    Ok(ModelComparison {
        rows,
        best_by_adj_r2,
        best_by_aic,
        criteria_disagree,
        tie,
    })
}
