//! Grids of the adjustment factors over `n` and `k`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::collinearity::adjustment_factors;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    /// `a(n,k)`
    #[serde(rename = "a")]
    A,
    /// `b(n,k) = 1 / sqrt(a(n,k))`
    #[serde(rename = "b")]
    B,
    /// `sqrt(a(n,k))`
    #[serde(rename = "sqrt-a")]
    SqrtA,
}

impl Factor {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "a" => Some(Factor::A),
            "b" => Some(Factor::B),
            "sqrt-a" | "sqrt_a" => Some(Factor::SqrtA),
            _ => None,
        }
    }

    pub fn value(self, n: usize, k: usize) -> f64 {
        let f = adjustment_factors(n, k).expect("grid cells satisfy n > k >= 2");
        match self {
            Factor::A => f.a,
            Factor::B => f.b,
            Factor::SqrtA => f.sqrt_a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub factor: Factor,
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    /// `values[row][col]` for `ns[row]`, `ks[col]`.
    pub values: Vec<Vec<f64>>,
}

/// `n = 15, 20, ..., 200` by `k = 3..=15`.
pub fn standard_grid(factor: Factor) -> Grid {
    grid(factor, (15..=200).step_by(5).collect(), (3..=15).collect())
}

pub fn grid(factor: Factor, ns: Vec<usize>, ks: Vec<usize>) -> Grid {
    let values = ns
        .iter()
        .map(|&n| ks.iter().map(|&k| factor.value(n, k)).collect())
        .collect();
    Grid { factor, ns, ks, values }
}

/// Aligned plain-text rendering with three decimals, one row per `n`.
pub fn format_grid(g: &Grid) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>6}", "n\\k");
    for k in &g.ks {
        let _ = write!(out, " {k:>6}");
    }
    out.push('\n');
    for (n, row) in g.ns.iter().zip(&g.values) {
        let _ = write!(out, "{n:>6}");
        for v in row {
            let _ = write!(out, " {v:>6.3}");
        }
        out.push('\n');
    }
    out
}

/// Inverse of [`format_grid`].
pub fn parse_grid(text: &str, factor: Factor) -> Option<Grid> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let ks = lines
        .next()?
        .split_whitespace()
        .skip(1)
        .map(|t| t.parse().ok())
        .collect::<Option<Vec<usize>>>()?;
    let mut ns = Vec::new();
    let mut values = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        ns.push(it.next()?.parse().ok()?);
        let row = it.map(|t| t.parse().ok()).collect::<Option<Vec<f64>>>()?;
        if row.len() != ks.len() {
            return None;
        }
        values.push(row);
    }
    Some(Grid { factor, ns, ks, values })
}
