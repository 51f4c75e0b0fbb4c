//! Jacobi eigensolvers for real symmetric matrices.
//!
//! * [`classical_jacobi`]: largest off-diagonal pivot at every step.
//! * [`cyclic_jacobi`]: row-cyclic sweeps with threshold skipping.
//! * [`low_precision_eig`]: binary32 eigenvectors from Householder
//!   tridiagonalization and implicit QL ([`JacobiF32`] is the Jacobi alternative).
//! * [`mixed_precision_jacobi`]: binary32 eigenvectors, re-orthogonalized in
//!   binary64, used as the starting basis of the binary64 cyclic solver.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numcore::{DenseMatrix, Scalar, SymMatrix, HIGH_ROUNDOFF, LOW_ROUNDOFF};
use crate::orth::Orthogonalizer;
use crate::rotations::{accumulate, apply_two_sided, JacobiRotation};

/// Which diagonal scale a pivot is compared against before it is skipped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StopRule {
    /// `|a_ij| <= nu * min(|a_ii|, |a_jj|)`
    #[default]
    MinDiag,
    /// `|a_ij| <= nu * sqrt(|a_ii a_jj|)`, the positive definite variant.
    GeoMeanDiag,
}

impl std::str::FromStr for StopRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" | "mindiag" => Ok(StopRule::MinDiag),
            "geomean" | "geomeandiag" => Ok(StopRule::GeoMeanDiag),
            other => Err(Error::InvalidArgument(format!(
                "unknown stop rule {other:?} (expected min or geomean)"
            ))),
        }
    }
}

/// Stopping tolerance and skip threshold, both expressed as multiples of the
/// solver's unit roundoff.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Converged once `off <= eps_factor * u * ‖A‖_F`.
    pub eps_factor: f64,
    /// Pivot skip threshold `nu = nu_factor * u`.
    pub nu_factor: f64,
    pub max_sweeps: usize,
    pub stop_rule: StopRule,
    /// One-sided solvers stop once a sweep applies fewer than `ratio * N` rotations.
    pub early_stop_ratio: Option<f64>,
}

impl ToleranceConfig {
    /// `eps = 0.1 u`, `nu = 20 u`.
    pub fn eig_default() -> Self {
        Self {
            eps_factor: 0.1,
            nu_factor: 20.0,
            max_sweeps: 100,
            stop_rule: StopRule::MinDiag,
            early_stop_ratio: None,
        }
    }

    /// `eps = 0.1 u`, `nu = u`, early stop below `2e-4 N` rotations per sweep.
    pub fn svd_default() -> Self {
        Self {
            eps_factor: 0.1,
            nu_factor: 1.0,
            max_sweeps: 100,
            stop_rule: StopRule::MinDiag,
            early_stop_ratio: Some(2e-4),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_factor > 0.0 && self.eps_factor.is_finite()) {
            return Err(Error::InvalidArgument("eps_factor must be positive".into()));
        }
        if !(self.nu_factor >= 0.0 && self.nu_factor.is_finite()) {
            return Err(Error::InvalidArgument(
                "nu_factor must be non-negative".into(),
            ));
        }
        if self.max_sweeps == 0 {
            return Err(Error::InvalidArgument(
                "max_sweeps must be at least 1".into(),
            ));
        }
        if let Some(r) = self.early_stop_ratio {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::InvalidArgument(
                    "early_stop_ratio must be non-negative".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn eps<T: Scalar>(&self) -> f64 {
        self.eps_factor * T::unit_roundoff()
    }

    pub fn nu<T: Scalar>(&self) -> f64 {
        self.nu_factor * T::unit_roundoff()
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self::eig_default()
    }
}

/// Convergence telemetry of one solve.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    /// Rotations actually applied; skipped pivots are not counted.
    pub rotations: u64,
    /// Sweeps started.
    pub sweeps: usize,
    /// Off-norm before the first sweep and after every sweep.
    pub off_history: Vec<f64>,
    pub wall_seconds: f64,
    /// `rotations / N` with `N = n(n-1)/2`.
    pub ju_ratio: f64,
    /// Off-norm of the preconditioned starting matrix (mixed-precision solvers only).
    pub off0: Option<f64>,
    /// Empirical bound `n ‖A‖₂ u_low` (or `n ‖A‖₂² u_low` for the SVD).
    pub bd: Option<f64>,
}

/// Number of pivot pairs in one sweep.
pub fn pairs_per_sweep(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn ju_ratio(rotations: u64, n: usize) -> f64 {
    let pairs = pairs_per_sweep(n);
    if pairs == 0 {
        0.0
    } else {
        rotations as f64 / pairs as f64
    }
}

#[derive(Clone, Debug)]
pub struct SymEigResult<T: Scalar> {
    /// Accumulated orthogonal transformation.
    pub p: DenseMatrix<T>,
    /// Final nearly diagonal matrix, `T ≈ Pᵀ A P`.
    pub t: SymMatrix<T>,
    /// `diag(T)`, in the order the solver left them.
    pub eigenvalues: Vec<T>,
    pub report: SolveReport,
}

impl<T: Scalar> SymEigResult<T> {
    pub fn sorted_eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.eigenvalues.iter().map(|x| x.as_f64()).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Classical Jacobi: each step rotates the largest `|a_pq|`, ties broken by the
/// smallest `(p, q)` in row order.
pub fn classical_jacobi<T: Scalar>(
    a: &SymMatrix<T>,
    tol: &ToleranceConfig,
) -> Result<SymEigResult<T>> {
    tol.validate()?;
    let start = Instant::now();
    let n = a.n();
    let pairs = pairs_per_sweep(n);
    let target = tol.eps::<T>() * a.frobenius_norm();
    let max_rotations = (tol.max_sweeps * pairs) as u64;

    let mut t = a.clone();
    let mut p = DenseMatrix::identity(n);
    let mut report = SolveReport::default();

    let (mut off, mut pivot) = off_and_pivot(&t);
    report.off_history.push(off);
    while off > target {
        if report.rotations >= max_rotations {
            return Err(Error::NoConvergence {
                sweeps: tol.max_sweeps,
                off_norm: off,
                target,
            });
        }
        let (i, j) = pivot;
        let r = JacobiRotation::two_sided(&t, i, j);
        apply_two_sided(&mut t, &r);
        accumulate(&mut p, &r);
        report.rotations += 1;
        (off, pivot) = off_and_pivot(&t);
        if report.rotations % pairs as u64 == 0 {
            report.off_history.push(off);
        }
    }
    if pairs > 0 && report.rotations % pairs as u64 != 0 {
        report.off_history.push(off);
    }
    report.sweeps = if pairs == 0 {
        0
    } else {
        (report.rotations as usize).div_ceil(pairs)
    };
    report.ju_ratio = ju_ratio(report.rotations, n);
    report.wall_seconds = start.elapsed().as_secs_f64();
    let eigenvalues = t.diagonal();
    Ok(SymEigResult {
        p,
        t,
        eigenvalues,
        report,
    })
}

/// Off-norm and the position of the largest off-diagonal magnitude (upper triangle).
fn off_and_pivot<T: Scalar>(t: &SymMatrix<T>) -> (f64, (usize, usize)) {
    let n = t.n();
    let mut acc = 0.0;
    let mut best = (0usize, 1usize);
    let mut best_val = -1.0;
    for i in 0..n {
        for j in i + 1..n {
            let x = t.get(i, j).as_f64();
            acc += 2.0 * x * x;
            // strict comparison keeps the first maximum in row order
            if x.abs() > best_val {
                best_val = x.abs();
                best = (i, j);
            }
        }
    }
    (acc.sqrt(), best)
}

/// Threshold row-cyclic Jacobi. Accumulation starts from `p0` when given.
pub fn cyclic_jacobi<T: Scalar>(
    a: &SymMatrix<T>,
    tol: &ToleranceConfig,
    p0: Option<&DenseMatrix<T>>,
) -> Result<SymEigResult<T>> {
    tol.validate()?;
    let start = Instant::now();
    let n = a.n();
    let p = match p0 {
        Some(p0) => {
            if p0.shape() != (n, n) {
                return Err(Error::DimensionMismatch {
                    expected: format!("{n}x{n} starting basis"),
                    found: format!("{}x{}", p0.rows(), p0.cols()),
                });
            }
            p0.clone()
        }
        None => DenseMatrix::identity(n),
    };
    let mut result = cyclic_from(a.clone(), p, tol, a.frobenius_norm())?;
    result.report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Runs the cyclic sweeps on `t`, accumulating into `p`. The stopping test
/// compares against `reference_norm`, computed once by the caller.
fn cyclic_from<T: Scalar>(
    mut t: SymMatrix<T>,
    mut p: DenseMatrix<T>,
    tol: &ToleranceConfig,
    reference_norm: f64,
) -> Result<SymEigResult<T>> {
    let n = t.n();
    let target = tol.eps::<T>() * reference_norm;
    let nu = T::from_f64(tol.nu::<T>());
    let mut report = SolveReport::default();

    let mut off = t.off_norm();
    report.off_history.push(off);
    while off > target {
        if report.sweeps >= tol.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps: report.sweeps,
                off_norm: off,
                target,
            });
        }
        report.sweeps += 1;
        for i in 0..n.saturating_sub(1) {
            for j in i + 1..n {
                let aij = t.get(i, j);
                let (aii, ajj) = (t.get(i, i).abs(), t.get(j, j).abs());
                let scale = match tol.stop_rule {
                    StopRule::MinDiag => aii.min(ajj),
                    StopRule::GeoMeanDiag => (aii * ajj).sqrt(),
                };
                if aij.abs() <= nu * scale {
                    if aij != T::zero() {
                        t.set_sym(i, j, T::zero());
                    }
                    continue;
                }
                let r = JacobiRotation::two_sided(&t, i, j);
                apply_two_sided(&mut t, &r);
                accumulate(&mut p, &r);
                report.rotations += 1;
            }
        }
        off = t.off_norm();
        report.off_history.push(off);
    }
    report.ju_ratio = ju_ratio(report.rotations, n);
    let eigenvalues = t.diagonal();
    Ok(SymEigResult {
        p,
        t,
        eigenvalues,
        report,
    })
}

/// Source of approximate eigenvectors in binary32 for the mixed-precision solver.
pub trait LowPrecisionEigensolver {
    fn eigenvectors(&self, a: &SymMatrix<f64>) -> Result<DenseMatrix<f32>>;
}

/// Threshold cyclic Jacobi executed in binary32.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiF32 {
    pub tol: ToleranceConfig,
}

impl Default for JacobiF32 {
    /// `eps = 10 u_low`, `nu = 20 u_low`.
    fn default() -> Self {
        Self {
            tol: ToleranceConfig {
                eps_factor: 10.0,
                nu_factor: 20.0,
                max_sweeps: 60,
                stop_rule: StopRule::MinDiag,
                early_stop_ratio: None,
            },
        }
    }
}

impl LowPrecisionEigensolver for JacobiF32 {
    fn eigenvectors(&self, a: &SymMatrix<f64>) -> Result<DenseMatrix<f32>> {
        let low: SymMatrix<f32> = a.cast()?;
        Ok(cyclic_jacobi(&low, &self.tol, None)?.p)
    }
}

/// Householder tridiagonalization and implicit QL in binary32.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TridiagonalF32;

impl LowPrecisionEigensolver for TridiagonalF32 {
    fn eigenvectors(&self, a: &SymMatrix<f64>) -> Result<DenseMatrix<f32>> {
        let low: SymMatrix<f32> = a.cast()?;
        Ok(crate::tridiag::symmetric_eig(&low)?.1)
    }
}

/// Approximate eigenvectors of `a` computed entirely in binary32.
pub fn low_precision_eig(a: &SymMatrix<f64>) -> Result<DenseMatrix<f32>> {
    TridiagonalF32.eigenvectors(a)
}

/// Mixed-precision Jacobi with the default binary32 eigensolver.
pub fn mixed_precision_jacobi(
    a: &SymMatrix<f64>,
    tol: &ToleranceConfig,
    orthogonalizer: Orthogonalizer,
) -> Result<SymEigResult<f64>> {
    mixed_precision_jacobi_with(&TridiagonalF32, a, tol, orthogonalizer)
}

/// Mixed-precision Jacobi:
/// binary32 eigenvectors `Z` → `Q = qr(Z)` in binary64 → `T = sym(Qᵀ A Q)` →
/// cyclic sweeps on `T` with accumulation seeded at `Q`.
pub fn mixed_precision_jacobi_with<S: LowPrecisionEigensolver + ?Sized>(
    solver: &S,
    a: &SymMatrix<f64>,
    tol: &ToleranceConfig,
    orthogonalizer: Orthogonalizer,
) -> Result<SymEigResult<f64>> {
    tol.validate()?;
    let start = Instant::now();
    let n = a.n();
    let z: DenseMatrix<f64> = solver.eigenvectors(a)?.cast()?;
    let (q, _) = orthogonalizer.factor(&z)?;
    let aq = a.matrix().matmul(&q)?;
    let t0 = SymMatrix::symmetrize(q.t_matmul(&aq)?)?;
    let off0 = t0.off_norm();
    let bd = n as f64 * spectral_norm_estimate(a.matrix()) * LOW_ROUNDOFF;

    let mut result = cyclic_from(t0, q, tol, a.frobenius_norm())?;
    result.report.off0 = Some(off0);
    result.report.bd = Some(bd);
    result.report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Estimate of `‖M‖₂` from 20 power iterations on `MᵀM`.
pub fn spectral_norm_estimate(m: &DenseMatrix<f64>) -> f64 {
    const ITERATIONS: usize = 20;
    let n = m.cols();
    if n == 0 || m.rows() == 0 {
        return 0.0;
    }
    // fixed, non-symmetric start so no eigenvector is missed by construction
    let mut x: Vec<f64> = (0..n)
        .map(|i| 1.0 + ((i * 7919) % 101) as f64 / 101.0)
        .collect();
    let mut estimate = 0.0;
    for _ in 0..ITERATIONS {
        let xn = crate::numcore::norm2_f64(&x);
        if xn == 0.0 {
            return 0.0;
        }
        x.iter_mut().for_each(|v| *v /= xn);
        let y = m.mul_vec(&x);
        estimate = crate::numcore::norm2_f64(&y);
        x = (0..n).map(|j| crate::numcore::dot(m.col(j), &y)).collect();
    }
    estimate
}

/// Smallest gap between eigenvalues that differ by more than `distinct_tol`;
/// `+inf` when every value is equal up to that tolerance.
pub fn spectral_gap(eigenvalues: &[f64], distinct_tol: f64) -> f64 {
    let mut v = eigenvalues.to_vec();
    v.sort_by(f64::total_cmp);
    v.windows(2)
        .map(|w| w[1] - w[0])
        .filter(|&g| g > distinct_tol)
        .fold(f64::INFINITY, f64::min)
}

/// `10^3 n ω ‖A‖₂`: eigenvalues closer than this are treated as one.
pub fn default_distinct_tol(n: usize, norm2: f64) -> f64 {
    1e3 * n as f64 * HIGH_ROUNDOFF * norm2
}
