//! Independent eigenvalue oracle: Householder tridiagonalization written
//! from scratch here, then Sturm-sequence bisection for every eigenvalue.
#![allow(dead_code)]

use mpjacobi::DenseMatrix;
use rand_pcg::rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64;

pub const OMEGA: f64 = 1.0 / 9007199254740992.0; // 2^-53
pub const UPSILON: f64 = 1.0 / 16777216.0; // 2^-24

pub fn rng(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

/// Uniform on [-1, 1).
pub fn uniform(r: &mut Pcg64) -> f64 {
    (r.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

pub fn random_symmetric(n: usize, r: &mut Pcg64) -> DenseMatrix<f64> {
    let mut m = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..=j {
            let v = uniform(r);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

fn tridiagonal(a: &DenseMatrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = a.rows();
    let mut w: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| w[i][k]).collect();
        let alpha = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let mut v = x.clone();
        v[0] += if x[0] >= 0.0 { alpha } else { -alpha };
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        // H = I - 2 v vᵀ / (vᵀv) acting on rows/cols k+1..n
        let m = v.len();
        let mut p = vec![0.0; m];
        for i in 0..m {
            p[i] = (0..m).map(|j| w[k + 1 + i][k + 1 + j] * v[j]).sum::<f64>() * 2.0 / vnorm2;
        }
        let kcoef = p.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / vnorm2;
        let q: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - kcoef * vi).collect();
        for i in 0..m {
            for j in 0..m {
                w[k + 1 + i][k + 1 + j] -= v[i] * q[j] + q[i] * v[j];
            }
        }
        let sub = if x[0] >= 0.0 { -alpha } else { alpha };
        w[k + 1][k] = sub;
        w[k][k + 1] = sub;
        for row in w.iter_mut().skip(k + 2) {
            row[k] = 0.0;
        }
        for v in &mut w[k][k + 2..] {
            *v = 0.0;
        }
    }
    let d = (0..n).map(|i| w[i][i]).collect();
    let e = (0..n.saturating_sub(1)).map(|i| w[i + 1][i]).collect();
    (d, e)
}

/// Number of eigenvalues of the tridiagonal `(d, e)` strictly below `x`.
fn sturm_count(d: &[f64], e: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    for i in 0..d.len() {
        if i > 0 {
            q = d[i] - x - e[i - 1] * e[i - 1] / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn eigenvalues(a: &DenseMatrix<f64>) -> Vec<f64> {
    let n = a.rows();
    if n == 0 {
        return Vec::new();
    }
    let (d, e) = tridiagonal(a);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    let pivmin = f64::MIN_POSITIVE * scale.max(1.0);
    lo -= 2.0 * OMEGA * scale;
    hi += 2.0 * OMEGA * scale;
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(&d, &e, mid, pivmin) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// Largest eigenvalue magnitude from the oracle.
pub fn spectral_norm(a: &DenseMatrix<f64>) -> f64 {
    eigenvalues(a).iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

pub fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
