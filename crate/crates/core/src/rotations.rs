//! Plane rotations for the two-sided (symmetric) and one-sided (column) Jacobi updates.
//!
//! A rotation `J(i, j)` equals the identity except for
//! `J[i,i] = J[j,j] = c`, `J[i,j] = s`, `J[j,i] = -s`.

use crate::error::{Error, Result};
use crate::numcore::{DenseMatrix, Scalar, SymMatrix};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiRotation<T: Scalar> {
    pub i: usize,
    pub j: usize,
    pub c: T,
    pub s: T,
}

/// Cosine-sine pair annihilating the `(i, j)` entry of a symmetric 2x2 block.
///
/// With `mu = (ajj - aii) / (2 aij)` the tangent is the smaller root of
/// `t^2 + 2 mu t - 1 = 0`, so `|theta| <= pi/4`. Returns `(1, 0)` for `aij = 0`.
pub fn two_sided_pair<T: Scalar>(aii: T, ajj: T, aij: T) -> (T, T) {
    if aij == T::zero() {
        return (T::one(), T::zero());
    }
    let two = T::from_f64(2.0);
    let mu = (ajj - aii) / (two * aij);
    let t = tangent(mu);
    let c = T::one() / (T::one() + t * t).sqrt();
    (c, t * c)
}

/// Cosine-sine pair orthogonalizing two columns given their Gram entries.
///
/// Returns `None` when `aitaj = 0` (the columns are already orthogonal).
pub fn one_sided_pair<T: Scalar>(aitai: T, ajtaj: T, aitaj: T) -> Option<(T, T)> {
    if aitaj == T::zero() {
        None
    } else {
        Some(two_sided_pair(aitai, ajtaj, aitaj))
    }
}

#[inline]
fn tangent<T: Scalar>(mu: T) -> T {
    // Beyond 1/sqrt(u) the square root rounds to |mu| and 1/(2 mu) is exact to working precision.
    let guard = T::from_f64(1.0 / T::unit_roundoff().sqrt());
    if mu.abs() > guard {
        return T::one() / (mu + mu);
    }
    let root = (T::one() + mu * mu).sqrt();
    if mu >= T::zero() {
        T::one() / (mu + root)
    } else {
        T::one() / (mu - root)
    }
}

impl<T: Scalar> JacobiRotation<T> {
    pub fn identity(i: usize, j: usize) -> Self {
        Self {
            i,
            j,
            c: T::one(),
            s: T::zero(),
        }
    }

    /// Rotation zeroing `a[i][j]` under `A <- Jᵀ A J`.
    pub fn two_sided(a: &SymMatrix<T>, i: usize, j: usize) -> Self {
        debug_assert!(i < j);
        let (c, s) = two_sided_pair(a.get(i, i), a.get(j, j), a.get(i, j));
        Self { i, j, c, s }
    }

    /// Rotation making columns `i` and `j` of `C J` orthogonal, from the Gram entries
    /// `ci·ci`, `cj·cj` and `ci·cj`.
    pub fn one_sided(i: usize, j: usize, aitai: T, ajtaj: T, aitaj: T) -> Result<Self> {
        let (c, s) =
            one_sided_pair(aitai, ajtaj, aitaj).ok_or(Error::PivotAlreadyOrthogonal { i, j })?;
        Ok(Self { i, j, c, s })
    }

    /// `tan(theta)`.
    pub fn tangent(&self) -> T {
        self.s / self.c
    }
}

/// `A <- Jᵀ A J` for a rotation computed from the current entries of `A`.
///
/// Only rows and columns `i, j` change. The diagonal is updated as
/// `a_ii - t a_ij`, `a_jj + t a_ij`, the pivot pair is stored as exact zeros
/// and both triangles are written so `A` stays bitwise symmetric.
pub fn apply_two_sided<T: Scalar>(a: &mut SymMatrix<T>, r: &JacobiRotation<T>) {
    let (i, j, c, s) = (r.i, r.j, r.c, r.s);
    let n = a.n();
    let aij = a.get(i, j);
    let aii = a.get(i, i);
    let ajj = a.get(j, j);
    let t = r.tangent();
    let tau = half_tangent(c, s);

    let m = a.storage_mut();
    {
        let (ci, cj) = m.col_pair_mut(i, j);
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            let (x, y) = (ci[k], cj[k]);
            ci[k] = x - s * (y + tau * x);
            cj[k] = y + s * (x - tau * y);
        }
        ci[i] = aii - t * aij;
        cj[j] = ajj + t * aij;
        ci[j] = T::zero();
        cj[i] = T::zero();
    }
    for k in 0..n {
        let ki = m.get(k, i);
        let kj = m.get(k, j);
        m.set(i, k, ki);
        m.set(j, k, kj);
    }
}

/// `tan(theta / 2) = s / (1 + c)`.
#[inline]
fn half_tangent<T: Scalar>(c: T, s: T) -> T {
    s / (T::one() + c)
}

/// `C <- C J`; touches columns `i` and `j` only.
///
/// Written as `x - s (y + tau x)`, `y + s (x - tau y)` with `tau = tan(theta/2)`:
/// for small angles `c` rounds to 1 and the plain `c x - s y` form would grow
/// the column norms by `s^2` on every rotation.
pub fn apply_one_sided<T: Scalar>(m: &mut DenseMatrix<T>, r: &JacobiRotation<T>) {
    let s = r.s;
    let tau = half_tangent(r.c, s);
    let (ci, cj) = m.col_pair_mut(r.i, r.j);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = a - s * (b + tau * a);
        *y = b + s * (a - tau * b);
    }
}

/// `P <- P J`, the eigenvector/right-vector accumulation. Same kernel as
/// [`apply_one_sided`].
#[inline]
pub fn accumulate<T: Scalar>(p: &mut DenseMatrix<T>, r: &JacobiRotation<T>) {
    apply_one_sided(p, r)
}
