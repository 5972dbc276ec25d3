//! Dense linear algebra used by the estimators: Householder QR with column
//! pivoting, triangular solves and centred/correlation helpers.

use nalgebra::DMatrix;

/// Relative rank tolerance: a pivot is treated as zero when its magnitude is
/// at most this fraction of the largest column norm.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Householder QR of an `m x p` matrix with column pivoting, `A P = Q R`.
///
/// The Householder vectors are stored below the diagonal of `factors` with an
/// implicit leading one; `R` occupies the upper triangle.
#[derive(Debug, Clone)]
pub struct PivotedQr {
    factors: DMatrix<f64>,
    tau: Vec<f64>,
    perm: Vec<usize>,
    rank: usize,
}

impl PivotedQr {
    pub fn new(a: DMatrix<f64>) -> Self {
        Self::with_tolerance(a, RANK_TOLERANCE)
    }

    pub fn with_tolerance(mut a: DMatrix<f64>, rel_tol: f64) -> Self {
        let (m, p) = a.shape();
        let steps = m.min(p);
        let mut perm: Vec<usize> = (0..p).collect();
        let mut tau = vec![0.0; steps];
        let max_norm = (0..p).map(|c| a.column(c).norm()).fold(0.0, f64::max);
        let mut rank = steps;

        for j in 0..steps {
            // Norms are recomputed rather than downdated; p is small here.
            let (pivot, _) = (j..p)
                .map(|c| (c, a.view((j, c), (m - j, 1)).norm_squared()))
                .fold((j, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot != j {
                a.swap_columns(j, pivot);
                perm.swap(j, pivot);
            }

            let x0 = a[(j, j)];
            let norm = a.view((j, j), (m - j, 1)).norm();
            if norm <= rel_tol * max_norm || norm == 0.0 {
                rank = rank.min(j);
                tau[j] = 0.0;
                continue;
            }
            let beta = if x0 >= 0.0 { -norm } else { norm };
            let v0 = x0 - beta;
            for i in j + 1..m {
                a[(i, j)] /= v0;
            }
            tau[j] = (beta - x0) / beta;
            a[(j, j)] = beta;

            for c in j + 1..p {
                let mut w = a[(j, c)];
                for i in j + 1..m {
                    w += a[(i, j)] * a[(i, c)];
                }
                w *= tau[j];
                a[(j, c)] -= w;
                for i in j + 1..m {
                    let vi = a[(i, j)];
                    a[(i, c)] -= w * vi;
                }
            }
        }

        Self {
            factors: a,
            tau,
            perm,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.factors.ncols()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.ncols()
    }

    /// `perm[i]` is the original index of the column moved to position `i`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Original indices of the columns judged linearly dependent.
    pub fn dependent_columns(&self) -> Vec<usize> {
        self.perm[self.rank..].to_vec()
    }

    /// Diagonal of `R` in pivoted order.
    pub fn r_diagonal(&self) -> Vec<f64> {
        let steps = self.tau.len();
        (0..steps).map(|j| self.factors[(j, j)]).collect()
    }

    /// Computes `Q^T b` in place.
    pub fn apply_qt(&self, b: &mut [f64]) {
        let m = self.factors.nrows();
        for (j, &t) in self.tau.iter().enumerate() {
            if t == 0.0 {
                continue;
            }
            let mut w = b[j];
            for i in j + 1..m {
                w += self.factors[(i, j)] * b[i];
            }
            w *= t;
            b[j] -= w;
            for i in j + 1..m {
                b[i] -= w * self.factors[(i, j)];
            }
        }
    }

    /// Least-squares solution of `A x = b`. Only valid for full column rank.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let p = self.ncols();
        let mut qtb = b.to_vec();
        self.apply_qt(&mut qtb);
        let mut z = vec![0.0; p];
        for i in (0..p).rev() {
            let mut s = qtb[i];
            for c in i + 1..p {
                s -= self.factors[(i, c)] * z[c];
            }
            z[i] = s / self.factors[(i, i)];
        }
        let mut x = vec![0.0; p];
        for (i, &orig) in self.perm.iter().enumerate() {
            x[orig] = z[i];
        }
        x
    }

    /// Inverse of the leading `p x p` upper-triangular factor.
    pub fn r_inverse(&self) -> DMatrix<f64> {
        let p = self.ncols();
        let mut inv = DMatrix::zeros(p, p);
        for col in 0..p {
            inv[(col, col)] = 1.0 / self.factors[(col, col)];
            for i in (0..col).rev() {
                let mut s = 0.0;
                for c in i + 1..=col {
                    s += self.factors[(i, c)] * inv[(c, col)];
                }
                inv[(i, col)] = -s / self.factors[(i, i)];
            }
        }
        inv
    }

    /// Diagonal of `(A^T A)^{-1}` in the original column order.
    pub fn inverse_gram_diagonal(&self) -> Vec<f64> {
        let rinv = self.r_inverse();
        let mut d = vec![0.0; self.ncols()];
        for (i, &orig) in self.perm.iter().enumerate() {
            d[orig] = rinv.row(i).norm_squared();
        }
        d
    }
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sum of squared deviations about the mean.
pub fn centered_sum_squares(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m) * (x - m)).sum()
}

/// Subtracts each column's mean.
pub fn center_columns(a: &DMatrix<f64>) -> DMatrix<f64> {
    let mut c = a.clone();
    for mut col in c.column_iter_mut() {
        let m = col.mean();
        col.add_scalar_mut(-m);
    }
    c
}

/// Sample correlation matrix of the columns of `a`. Returns the index of the
/// first zero-variance column as the error.
pub fn correlation_matrix(a: &DMatrix<f64>) -> Result<DMatrix<f64>, usize> {
    let c = center_columns(a);
    let p = c.ncols();
    let mut scaled = c;
    for j in 0..p {
        let norm = scaled.column(j).norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(j);
        }
        scaled.column_mut(j).unscale_mut(norm);
    }
    let mut r = scaled.tr_mul(&scaled);
    for j in 0..p {
        r[(j, j)] = 1.0;
    }
    Ok(r)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
