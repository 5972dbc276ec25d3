//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use collin_core::simulation::{run_figure_experiment, Design, ExperimentConfig};
use collin_core::tables::{standard_grid, Factor};
use collin_core::{adjustment_factors, decide};

fn to_json<T: Serialize>(r: collin_core::Result<T>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e.to_string()),
    }
}

fn error_json(msg: &str) -> String {
    json!({ "error": msg }).to_string()
}

/// `{a, sqrt_a, b}` for one `(n, k)`.
#[wasm_bindgen]
pub fn adjustment(n: u32, k: u32) -> String {
    to_json(adjustment_factors(n as usize, k as usize))
}

/// The standard `n = 15..200`, `k = 3..15` grid of `what` (`a`, `b` or
/// `sqrt-a`).
#[wasm_bindgen]
pub fn adjustment_grid(what: &str) -> String {
    match Factor::parse(what) {
        Some(f) => to_json(Ok(standard_grid(f))),
        None => error_json(&format!("unknown factor `{what}`")),
    }
}

/// Max VIF and max aVIF for `k = 3..=max_predictors + 1` on one
/// independent-normals draw: `{k: [...], max_vif: [...], max_avif: [...],
/// vif_threshold_k, avif_threshold_k}`.
#[wasm_bindgen]
pub fn figure_series(n: u32, seed: u32, max_predictors: u32) -> String {
    let config = ExperimentConfig::new(Design::IndependentNormals, n as usize, u64::from(seed))
        .with_max_predictors(max_predictors as usize);
    to_json(run_figure_experiment(&config).map(|(vif, avif)| {
        json!({
            "k": vif.series.iter().map(|p| p.k).collect::<Vec<_>>(),
            "max_vif": vif.series.iter().map(|p| p.max_vif).collect::<Vec<_>>(),
            "max_avif": vif.series.iter().map(|p| p.max_avif).collect::<Vec<_>>(),
            "vif_threshold_k": vif.threshold_k,
            "avif_threshold_k": avif.threshold_k,
        })
    }))
}

/// Classic and adjusted verdicts for one `t_exp`.
#[wasm_bindgen]
pub fn decide_rule(t_exp: f64, n: u32, k: u32, alpha: f64) -> String {
    to_json(decide(t_exp, n as usize, k as usize, alpha))
}
