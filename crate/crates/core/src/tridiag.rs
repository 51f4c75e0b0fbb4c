//! Householder tridiagonalization followed by implicit QL with Wilkinson-type
//! shifts, all in the element precision `T`.
//!
//! Used as the binary32 eigensolver behind the mixed-precision pipeline.

use crate::error::{Error, Result};
use crate::numcore::{dot, DenseMatrix, Scalar, SymMatrix};

/// Eigenvalues (unsorted) and eigenvectors (columns) of a symmetric matrix.
pub fn symmetric_eig<T: Scalar>(a: &SymMatrix<T>) -> Result<(Vec<T>, DenseMatrix<T>)> {
    let n = a.n();
    let (mut d, mut e, mut z) = tridiagonalize(a);
    tql(&mut d, &mut e, &mut z, n)?;
    Ok((d, DenseMatrix::from_col_major(n, n, z)?))
}

/// Returns `(d, e, Q)` with `Qᵀ A Q` tridiagonal: diagonal `d`, and `e[i]`
/// coupling `i` and `i + 1` (`e[n-1] = 0`). `Q` is column-major.
pub(crate) fn tridiagonalize<T: Scalar>(a: &SymMatrix<T>) -> (Vec<T>, Vec<T>, Vec<T>) {
    let n = a.n();
    let mut w: Vec<T> = a.matrix().as_slice().to_vec();
    let at = |i: usize, j: usize| j * n + i;
    let mut e = vec![T::zero(); n];
    let mut reflectors: Vec<(Vec<T>, T)> = Vec::with_capacity(n.saturating_sub(2));

    for k in 0..n.saturating_sub(2) {
        let x = &w[at(k + 1, k)..at(n, k)];
        let alpha = dot(x, x).sqrt();
        if alpha == T::zero() {
            e[k] = T::zero();
            reflectors.push((Vec::new(), T::zero()));
            continue;
        }
        let mut v = x.to_vec();
        let signed = if v[0] >= T::zero() { alpha } else { -alpha };
        v[0] = v[0] + signed;
        let beta = T::from_f64(2.0) / dot(&v, &v);
        let m = v.len();
        let off = k + 1;

        // p = beta B v, w = p - (beta pᵀv / 2) v, B -= v wᵀ + w vᵀ
        let mut p: Vec<T> = (0..m)
            .map(|i| {
                let col = &w[at(off, off + i)..at(off, off + i) + m];
                beta * dot(col, &v)
            })
            .collect();
        let half = beta * dot(&p, &v) / T::from_f64(2.0);
        for (pi, &vi) in p.iter_mut().zip(&v) {
            *pi = *pi - half * vi;
        }
        for j in 0..m {
            let (vj, pj) = (v[j], p[j]);
            let base = at(off, off + j);
            for i in 0..m {
                w[base + i] = w[base + i] - v[i] * pj - p[i] * vj;
            }
        }
        e[k] = -signed;
        reflectors.push((v, beta));
    }
    if n >= 2 {
        e[n - 2] = w[at(n - 1, n - 2)];
    }
    let d: Vec<T> = (0..n).map(|i| w[at(i, i)]).collect();

    let mut q = vec![T::zero(); n * n];
    for i in 0..n {
        q[at(i, i)] = T::one();
    }
    for (k, (v, beta)) in reflectors.iter().enumerate().rev() {
        if v.is_empty() {
            continue;
        }
        let off = k + 1;
        for j in off..n {
            let col = &mut q[at(off, j)..at(n, j)];
            let s = *beta * dot(v, col);
            if s != T::zero() {
                for (c, &vi) in col.iter_mut().zip(v) {
                    *c = *c - s * vi;
                }
            }
        }
    }
    (d, e, q)
}

/// Implicit QL on the tridiagonal `(d, e)`, rotating the columns of `z`.
pub(crate) fn tql<T: Scalar>(d: &mut [T], e: &mut [T], z: &mut [T], n: usize) -> Result<()> {
    const MAX_ITER: usize = 60;
    let two = T::from_f64(2.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::NoConvergence {
                    sweeps: iter,
                    off_norm: e[l].abs().as_f64(),
                    target: 0.0,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let signed_r = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + signed_r);
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let (left, right) = z.split_at_mut((i + 1) * n);
                let zi = &mut left[i * n..];
                let zi1 = &mut right[..n];
                for (x, y) in zi.iter_mut().zip(zi1.iter_mut()) {
                    let f = *y;
                    *y = s * *x + c * f;
                    *x = c * *x - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
