//! Independent reference implementations and data builders shared by the
//! integration tests. Nothing here calls the library's own linear algebra
//! or distribution code.

#![allow(dead_code)]

use collin_core::simulation::rng::SplitMix64;
use collin_core::Dataset;
use nalgebra::{DMatrix, DVector};

pub fn names(p: usize) -> Vec<String> {
    (1..=p).map(|j| format!("x{j}")).collect()
}

/// `n x p` predictors with random pairwise correlation (a random mixing of
/// independent normals) plus random location and scale, and a response that
/// depends on the first few columns. Strong mixing routinely gives VIFs in
/// the thousands.
pub fn random_dataset(rng: &mut SplitMix64, n: usize, p: usize) -> Dataset {
    mixed_dataset(rng, n, p, 0.6)
}

/// As [`random_dataset`] with off-diagonal mixing weights of scale `mix`.
pub fn mixed_dataset(rng: &mut SplitMix64, n: usize, p: usize, mix: f64) -> Dataset {
    let z = DMatrix::from_fn(n, p, |_, _| rng.standard_normal());
    let mix = DMatrix::from_fn(p, p, |i, j| {
        if i == j {
            1.0
        } else {
            mix * rng.standard_normal()
        }
    });
    let mut x = z * mix;
    for j in 0..p {
        let scale = 0.5 + 4.0 * rng.next_open01();
        let shift = 10.0 * rng.standard_normal();
        for i in 0..n {
            x[(i, j)] = scale * x[(i, j)] + shift;
        }
    }
    let y: Vec<f64> = (0..n)
        .map(|i| {
            let signal: f64 = (0..p.min(3)).map(|j| (j as f64 + 1.0) * x[(i, j)]).sum();
            2.0 + signal + 3.0 * rng.standard_normal()
        })
        .collect();
    Dataset::from_matrix(y, x, names(p)).unwrap()
}

/// Predictors `x_j = z_j + l_j1 F_1 + l_j2 F_2` with loadings drawn from
/// N(0, 1): correlated through two shared factors but never close to
/// singular. Random location and scale as in [`random_dataset`].
pub fn factor_dataset(rng: &mut SplitMix64, n: usize, p: usize) -> Dataset {
    let f = DMatrix::from_fn(n, 2, |_, _| rng.standard_normal());
    let loadings = DMatrix::from_fn(2, p, |_, _| rng.standard_normal());
    let mut x = DMatrix::from_fn(n, p, |_, _| rng.standard_normal()) + f * loadings;
    for j in 0..p {
        let scale = 0.5 + 4.0 * rng.next_open01();
        let shift = 10.0 * rng.standard_normal();
        for i in 0..n {
            x[(i, j)] = scale * x[(i, j)] + shift;
        }
    }
    let y: Vec<f64> = (0..n)
        .map(|i| {
            let signal: f64 = (0..p.min(3)).map(|j| (j as f64 + 1.0) * x[(i, j)]).sum();
            2.0 + signal + 3.0 * rng.standard_normal()
        })
        .collect();
    Dataset::from_matrix(y, x, names(p)).unwrap()
}

pub fn with_intercept(x: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, p) = x.shape();
    DMatrix::from_fn(n, p + 1, |i, j| if j == 0 { 1.0 } else { x[(i, j - 1)] })
}

/// Coefficients from `X'X b = X'y` solved by LU.
pub fn ols_normal_equations(data: &Dataset) -> Vec<f64> {
    let x = with_intercept(data.columns());
    let y = DVector::from_column_slice(data.response());
    let xtx = x.transpose() * &x;
    let xty = x.transpose() * y;
    xtx.lu().solve(&xty).expect("nonsingular").iter().copied().collect()
}

/// Sample correlation matrix computed directly from sums.
pub fn correlation(x: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, p) = x.shape();
    let means: Vec<f64> = (0..p).map(|j| x.column(j).sum() / n as f64).collect();
    let mut c = DMatrix::zeros(p, p);
    for a in 0..p {
        for b in 0..p {
            c[(a, b)] = (0..n).map(|i| (x[(i, a)] - means[a]) * (x[(i, b)] - means[b])).sum::<f64>();
        }
    }
    let d: Vec<f64> = (0..p).map(|j| c[(j, j)].sqrt()).collect();
    DMatrix::from_fn(p, p, |a, b| c[(a, b)] / (d[a] * d[b]))
}

/// VIF_j as the j-th diagonal element of the inverse correlation matrix.
pub fn vif_inverse_correlation(x: &DMatrix<f64>) -> Vec<f64> {
    let inv = correlation(x).try_inverse().expect("invertible correlation matrix");
    (0..x.ncols()).map(|j| inv[(j, j)]).collect()
}

pub fn correlation_det_lu(x: &DMatrix<f64>) -> f64 {
    correlation(x).lu().determinant()
}

/// Ratio of extreme singular values of the unit-length-scaled design with
/// intercept.
pub fn condition_number_svd(x: &DMatrix<f64>) -> f64 {
    let mut d = with_intercept(x);
    for mut col in d.column_iter_mut() {
        let norm = col.norm();
        col /= norm;
    }
    let s = d.svd(false, false).singular_values;
    s.max() / s.min()
}

/// Student-t density constant `Gamma((v+1)/2) / (sqrt(v pi) Gamma(v/2))` by
/// the exact two-step recurrence on `v`.
pub fn t_density_constant(df: u64) -> f64 {
    let pi = std::f64::consts::PI;
    let mut r = if df % 2 == 1 { 1.0 / pi.sqrt() } else { pi.sqrt() / 2.0 };
    let mut v = if df % 2 == 1 { 1 } else { 2 };
    while v < df {
        r *= (v as f64 + 1.0) / v as f64;
        v += 2;
    }
    r / (df as f64 * pi).sqrt()
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `P(T <= q)` for `q >= 0` by quadrature of the density.
pub fn t_cdf_quadrature(df: u64, q: f64) -> f64 {
    let c = t_density_constant(df);
    let v = df as f64;
    let density = |x: f64| c * (1.0 + x * x / v).powf(-(v + 1.0) / 2.0);
    0.5 + adaptive_simpson(density, 0.0, q, 1e-13)
}

/// Upper quantile (`p > 0.5`) by bisection on the quadrature CDF.
pub fn t_quantile_bisection(df: u64, p: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = 1.0;
    while t_cdf_quadrature(df, hi) < p {
        hi *= 2.0;
    }
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if t_cdf_quadrature(df, mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Reads `n,k1,k2,...` grids into `(ns, ks, values)`.
pub fn read_grid(text: &str) -> (Vec<usize>, Vec<usize>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let ks = lines.next().unwrap().split(',').skip(1).map(|t| t.parse().unwrap()).collect();
    let mut ns = Vec::new();
    let mut values = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let mut it = line.split(',');
        ns.push(it.next().unwrap().parse().unwrap());
        values.push(it.map(|t| t.parse().unwrap()).collect());
    }
    (ns, ks, values)
}

/// `(j, t_exp, t_crit, at_crit, option)` rows of the worked decision table.
pub fn read_decision_table(text: &str) -> Vec<(usize, f64, f64, f64, String)> {
    text.lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (
                c[0].parse().unwrap(),
                c[1].parse().unwrap(),
                c[2].parse().unwrap(),
                c[3].parse().unwrap(),
                c[4].to_string(),
            )
        })
        .collect()
}

pub fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}
