//! Re-orthogonalization of a nearly orthogonal matrix in binary64.
//!
//! Both factorizations return a thin `Q` (`m x n`, orthonormal columns) and an
//! upper-triangular `R` (`n x n`) with non-negative diagonal. No column pivoting,
//! so column `k` of `Q` stays paired with column `k` of the input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numcore::{dot, DenseMatrix, LOW_ROUNDOFF};

/// Which factorization produces the orthogonal seed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orthogonalizer {
    #[default]
    Mgs,
    Householder,
}

impl Orthogonalizer {
    pub fn factor(self, z: &DenseMatrix<f64>) -> Result<(DenseMatrix<f64>, DenseMatrix<f64>)> {
        match self {
            Orthogonalizer::Mgs => mgs_qr(z),
            Orthogonalizer::Householder => householder_qr(z),
        }
    }
}

impl std::str::FromStr for Orthogonalizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mgs" => Ok(Orthogonalizer::Mgs),
            "householder" | "hh" => Ok(Orthogonalizer::Householder),
            other => Err(Error::InvalidArgument(format!(
                "unknown orthogonalizer {other:?} (expected mgs or householder)"
            ))),
        }
    }
}

fn check_tall(z: &DenseMatrix<f64>) -> Result<()> {
    if z.cols() > z.rows() {
        return Err(Error::DimensionMismatch {
            expected: "rows >= cols".into(),
            found: format!("{}x{}", z.rows(), z.cols()),
        });
    }
    Ok(())
}

/// Column norms below `u_low^2` times the largest input column are treated as zero.
fn rank_floor(z: &DenseMatrix<f64>) -> f64 {
    let largest = z.column_norms().into_iter().fold(0.0, f64::max);
    LOW_ROUNDOFF * LOW_ROUNDOFF * largest
}

/// Column-oriented modified Gram-Schmidt.
///
/// Step `k` normalizes column `k` and immediately removes its component from
/// every later column.
pub fn mgs_qr(z: &DenseMatrix<f64>) -> Result<(DenseMatrix<f64>, DenseMatrix<f64>)> {
    check_tall(z)?;
    let n = z.cols();
    let floor = rank_floor(z);
    let mut q = z.clone();
    let mut r = DenseMatrix::zeros(n, n);
    for k in 0..n {
        let rkk = dot(q.col(k), q.col(k)).sqrt();
        if rkk <= floor || rkk == 0.0 {
            return Err(Error::RankDeficient {
                column: k,
                norm: rkk,
            });
        }
        r.set(k, k, rkk);
        q.col_mut(k).iter_mut().for_each(|x| *x /= rkk);
        for j in k + 1..n {
            let (qk, qj) = q.col_pair_mut(k, j);
            let rkj = dot(qk, qj);
            r.set(k, j, rkj);
            for (y, &x) in qj.iter_mut().zip(qk.iter()) {
                *y -= rkj * x;
            }
        }
    }
    Ok((q, r))
}

/// Householder QR with the thin `Q` formed explicitly; signs are fixed so that
/// `diag(R) >= 0`.
pub fn householder_qr(z: &DenseMatrix<f64>) -> Result<(DenseMatrix<f64>, DenseMatrix<f64>)> {
    check_tall(z)?;
    let (m, n) = z.shape();
    let floor = rank_floor(z);
    let mut a = z.clone();
    // Reflector k is I - beta_k v_k v_kᵀ with v_k supported on rows k..m.
    let mut reflectors: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n);
    for k in 0..n {
        let x = &a.col(k)[k..];
        let alpha = dot(x, x).sqrt();
        if alpha <= floor || alpha == 0.0 {
            return Err(Error::RankDeficient {
                column: k,
                norm: alpha,
            });
        }
        let mut v = x.to_vec();
        let x0 = v[0];
        // v = x + sign(x0) |x| e1 avoids cancellation; R[k,k] = -sign(x0) |x|
        let head = if x0 >= 0.0 { x0 + alpha } else { x0 - alpha };
        v[0] = head;
        let vtv = dot(&v, &v);
        let beta = 2.0 / vtv;
        for j in k..n {
            let col = &mut a.col_mut(j)[k..];
            let w = beta * dot(&v, col);
            for (c, &vi) in col.iter_mut().zip(&v) {
                *c -= w * vi;
            }
        }
        reflectors.push((v, beta));
    }

    let mut r = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..=j {
            r.set(i, j, a.get(i, j));
        }
    }

    let mut q = DenseMatrix::from_fn(m, n, |i, j| if i == j { 1.0 } else { 0.0 });
    for (k, (v, beta)) in reflectors.iter().enumerate().rev() {
        for j in 0..n {
            let col = &mut q.col_mut(j)[k..];
            let w = beta * dot(v, col);
            if w != 0.0 {
                for (c, &vi) in col.iter_mut().zip(v) {
                    *c -= w * vi;
                }
            }
        }
    }

    for k in 0..n {
        if r.get(k, k) < 0.0 {
            q.col_mut(k).iter_mut().for_each(|x| *x = -*x);
            for j in k..n {
                r.set(k, j, -r.get(k, j));
            }
        }
    }
    Ok((q, r))
}
