//! One-sided Jacobi SVD and its mixed-precision variant.
//!
//! The working matrix `C = A V` is rotated column pair by column pair until its
//! columns are numerically orthogonal; then `σ_j = ‖c_j‖` and `u_j = c_j / σ_j`.

use std::time::Instant;

use crate::eig::{pairs_per_sweep, spectral_norm_estimate, SolveReport, ToleranceConfig};
use crate::error::{Error, Result};
use crate::numcore::{dot, dot_f64, DenseMatrix, Scalar, SymMatrix, LOW_ROUNDOFF};
use crate::orth::Orthogonalizer;
use crate::rotations::{accumulate, apply_one_sided, JacobiRotation};

#[derive(Clone, Debug)]
pub struct SvdResult<T: Scalar> {
    /// `m x n`, orthonormal columns.
    pub u: DenseMatrix<T>,
    /// Non-increasing, positive.
    pub sigma: Vec<T>,
    /// `n x n` orthogonal.
    pub v: DenseMatrix<T>,
    pub report: SolveReport,
}

/// `(‖off(CᵀC)‖_F, ‖CᵀC‖_F)` with the Gram matrix accumulated in binary64.
pub fn gram_off_norm<T: Scalar>(c: &DenseMatrix<T>) -> (f64, f64) {
    let n = c.cols();
    let mut off = 0.0;
    let mut diag = 0.0;
    for j in 0..n {
        let cj = c.col(j);
        let g = dot_f64(cj, cj);
        diag += g * g;
        for i in 0..j {
            let g = dot_f64(c.col(i), cj);
            off += 2.0 * g * g;
        }
    }
    (off.sqrt(), (off + diag).sqrt())
}

fn check_shape<T: Scalar>(a: &DenseMatrix<T>) -> Result<()> {
    if a.rows() < a.cols() {
        return Err(Error::DimensionMismatch {
            expected: "rows >= cols".into(),
            found: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    Ok(())
}

/// Row-cyclic one-sided sweeps on `c`, accumulating into `v`.
///
/// Stops when the Gram off-norm test passes, when a sweep applies no rotation,
/// or when a sweep applies fewer than `early_stop_ratio * N` rotations.
fn one_sided_sweeps<T: Scalar>(
    c: &mut DenseMatrix<T>,
    v: &mut DenseMatrix<T>,
    tol: &ToleranceConfig,
) -> Result<SolveReport> {
    let n = c.cols();
    let pairs = pairs_per_sweep(n);
    let eps = tol.eps::<T>();
    let nu = T::from_f64(tol.nu::<T>());
    let mut report = SolveReport::default();

    let (mut off, mut total) = gram_off_norm(c);
    report.off_history.push(off);
    while off > eps * total {
        if report.sweeps >= tol.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps: report.sweeps,
                off_norm: off,
                target: eps * total,
            });
        }
        report.sweeps += 1;
        let mut applied = 0u64;
        for i in 0..n.saturating_sub(1) {
            for j in i + 1..n {
                // Gram entries are recomputed at every visit.
                let (ci, cj) = (c.col(i), c.col(j));
                let gij = dot(ci, cj);
                let gii = dot(ci, ci);
                let gjj = dot(cj, cj);
                if gij.abs() <= nu * gii.sqrt() * gjj.sqrt() {
                    continue;
                }
                let r = match JacobiRotation::one_sided(i, j, gii, gjj, gij) {
                    Ok(r) => r,
                    Err(Error::PivotAlreadyOrthogonal { .. }) => continue,
                    Err(e) => return Err(e),
                };
                apply_one_sided(c, &r);
                accumulate(v, &r);
                applied += 1;
            }
        }
        report.rotations += applied;
        (off, total) = gram_off_norm(c);
        report.off_history.push(off);
        if applied == 0 {
            break;
        }
        if let Some(ratio) = tol.early_stop_ratio {
            if (applied as f64) < ratio * pairs as f64 {
                break;
            }
        }
    }
    report.ju_ratio = if pairs == 0 {
        0.0
    } else {
        report.rotations as f64 / pairs as f64
    };
    Ok(report)
}

/// Sorts columns by norm (stable, descending) and normalizes them.
fn extract<T: Scalar>(
    c: &DenseMatrix<T>,
    v: &DenseMatrix<T>,
    a_norm: f64,
) -> Result<(DenseMatrix<T>, Vec<T>, DenseMatrix<T>)> {
    let (m, n) = c.shape();
    let norms = c.column_norms();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let floor = n as f64 * T::unit_roundoff() * a_norm;
    if let Some(&k) = order.iter().find(|&&k| norms[k] <= floor) {
        return Err(Error::RankDeficient {
            column: k,
            norm: norms[k],
        });
    }
    let sigma: Vec<T> = order.iter().map(|&k| T::from_f64(norms[k])).collect();
    let u = DenseMatrix::from_fn(m, n, |i, j| {
        let k = order[j];
        c.get(i, k) / sigma[j]
    });
    let v = DenseMatrix::from_fn(v.rows(), n, |i, j| v.get(i, order[j]));
    Ok((u, sigma, v))
}

/// One-sided Jacobi SVD of `a` (`m >= n`). With `v0`, the sweeps start from
/// `C = A V0` and accumulate into `V0`.
pub fn one_sided_jacobi_svd<T: Scalar>(
    a: &DenseMatrix<T>,
    tol: &ToleranceConfig,
    v0: Option<&DenseMatrix<T>>,
) -> Result<SvdResult<T>> {
    tol.validate()?;
    check_shape(a)?;
    let start = Instant::now();
    let n = a.cols();
    let (mut c, mut v) = match v0 {
        Some(v0) => {
            if v0.shape() != (n, n) {
                return Err(Error::DimensionMismatch {
                    expected: format!("{n}x{n} starting basis"),
                    found: format!("{}x{}", v0.rows(), v0.cols()),
                });
            }
            (a.matmul(v0)?, v0.clone())
        }
        None => (a.clone(), DenseMatrix::identity(n)),
    };
    let mut report = one_sided_sweeps(&mut c, &mut v, tol)?;
    let (u, sigma, v) = extract(&c, &v, a.frobenius_norm())?;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(SvdResult {
        u,
        sigma,
        v,
        report,
    })
}

/// Source of approximate right singular vectors in binary32.
pub trait LowPrecisionSvdSolver {
    fn right_vectors(&self, a: &DenseMatrix<f64>) -> Result<DenseMatrix<f32>>;
}

/// One-sided Jacobi executed in binary32, keeping only the accumulated `V`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneSidedF32 {
    pub tol: ToleranceConfig,
}

impl Default for OneSidedF32 {
    /// `eps = 10 u_low`, `nu = u_low`, early stop below `2e-4 N`.
    fn default() -> Self {
        Self {
            tol: ToleranceConfig {
                eps_factor: 10.0,
                nu_factor: 1.0,
                max_sweeps: 60,
                early_stop_ratio: Some(2e-4),
                ..ToleranceConfig::svd_default()
            },
        }
    }
}

impl LowPrecisionSvdSolver for OneSidedF32 {
    fn right_vectors(&self, a: &DenseMatrix<f64>) -> Result<DenseMatrix<f32>> {
        check_shape(a)?;
        let mut c: DenseMatrix<f32> = a.cast()?;
        let mut v = DenseMatrix::identity(a.cols());
        one_sided_sweeps(&mut c, &mut v, &self.tol)?;
        Ok(v)
    }
}

/// Binary32 right vectors in two stages: eigenvectors `Z` of the binary32 Gram
/// matrix (tridiagonal QL), then one-sided Jacobi on `A Z` until no pair
/// passes the `nu = u_low` test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramSeededF32 {
    pub polish: ToleranceConfig,
}

impl Default for GramSeededF32 {
    fn default() -> Self {
        Self {
            polish: ToleranceConfig {
                eps_factor: 0.0,
                nu_factor: 1.0,
                max_sweeps: 60,
                early_stop_ratio: None,
                ..ToleranceConfig::svd_default()
            },
        }
    }
}

impl LowPrecisionSvdSolver for GramSeededF32 {
    fn right_vectors(&self, a: &DenseMatrix<f64>) -> Result<DenseMatrix<f32>> {
        check_shape(a)?;
        let low: DenseMatrix<f32> = a.cast()?;
        let gram = SymMatrix::symmetrize(low.t_matmul(&low)?)?;
        let (_, mut v) = crate::tridiag::symmetric_eig(&gram)?;
        let mut c = low.matmul(&v)?;
        one_sided_sweeps(&mut c, &mut v, &self.polish)?;
        Ok(v)
    }
}

/// Approximate right singular vectors of `a` computed entirely in binary32.
pub fn low_precision_svd(a: &DenseMatrix<f64>) -> Result<DenseMatrix<f32>> {
    GramSeededF32::default().right_vectors(a)
}

/// Mixed-precision one-sided Jacobi with the default binary32 solver.
pub fn mixed_precision_svd(
    a: &DenseMatrix<f64>,
    tol: &ToleranceConfig,
    orthogonalizer: Orthogonalizer,
) -> Result<SvdResult<f64>> {
    mixed_precision_svd_with(&GramSeededF32::default(), a, tol, orthogonalizer)
}

/// Mixed-precision one-sided Jacobi:
/// binary32 right vectors `Z` → `Q = qr(Z)` in binary64 → `C = A Q` →
/// one-sided sweeps on `C` with `V` seeded at `Q`.
pub fn mixed_precision_svd_with<S: LowPrecisionSvdSolver + ?Sized>(
    solver: &S,
    a: &DenseMatrix<f64>,
    tol: &ToleranceConfig,
    orthogonalizer: Orthogonalizer,
) -> Result<SvdResult<f64>> {
    tol.validate()?;
    check_shape(a)?;
    let start = Instant::now();
    let n = a.cols();
    let z: DenseMatrix<f64> = solver.right_vectors(a)?.cast()?;
    let (q, _) = orthogonalizer.factor(&z)?;
    let mut c = a.matmul(&q)?;
    let mut v = q;
    let (off0, _) = gram_off_norm(&c);
    let norm2 = spectral_norm_estimate(a);
    let bd = n as f64 * norm2 * norm2 * LOW_ROUNDOFF;

    let mut report = one_sided_sweeps(&mut c, &mut v, tol)?;
    let (u, sigma, v) = extract(&c, &v, a.frobenius_norm())?;
    report.off0 = Some(off0);
    report.bd = Some(bd);
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(SvdResult {
        u,
        sigma,
        v,
        report,
    })
}
