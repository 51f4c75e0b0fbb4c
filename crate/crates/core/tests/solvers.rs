mod common;

use common::*;
use mpjacobi::harness::{orth_defect, residual_eig, residual_svd};
use mpjacobi::rotations::apply_two_sided;
use mpjacobi::{
    classical_jacobi, cyclic_jacobi, generate, mixed_precision_jacobi, mixed_precision_svd,
    one_sided_jacobi_svd, DenseMatrix, JacobiRotation, MatGenSpec, Orthogonalizer, SymMatrix,
    ToleranceConfig,
};
use rand_pcg::rand_core::Rng;

/// `[[0, A], [Aᵀ, 0]]`: eigenvalues are `±σ` plus `m - n` zeros.
fn augmented(a: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    let (m, n) = a.shape();
    DenseMatrix::from_fn(m + n, m + n, |i, j| match (i < m, j < m) {
        (true, false) => a.get(i, j - m),
        (false, true) => a.get(j, i - m),
        _ => 0.0,
    })
}

fn oracle_singular_values(a: &DenseMatrix<f64>) -> Vec<f64> {
    let n = a.cols();
    let mut s = eigenvalues(&augmented(a));
    s.reverse();
    s.truncate(n);
    s
}

fn random_dense(m: usize, n: usize, seed: u64) -> DenseMatrix<f64> {
    let mut r = rng(seed);
    DenseMatrix::from_fn(m, n, |_, _| uniform(&mut r))
}

#[test]
fn rotations_preserve_spectrum() {
    let mut r = rng(7);
    for n in [3, 5, 9] {
        let a0 = random_symmetric(n, &mut r);
        let exact = eigenvalues(&a0);
        let mut a = SymMatrix::new(a0).unwrap();
        for _ in 0..60 {
            let i = (r.next_u64() % n as u64) as usize;
            let j = (r.next_u64() % n as u64) as usize;
            if i != j {
                let rot = JacobiRotation::two_sided(&a, i.min(j), i.max(j));
                apply_two_sided(&mut a, &rot);
            }
        }
        let after = eigenvalues(a.matrix());
        let scale = exact.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(max_abs_diff(&after, &exact) <= 200.0 * n as f64 * OMEGA * scale);
    }
}

#[test]
fn eig_solvers_match_oracle() {
    let mut r = rng(11);
    let tol = ToleranceConfig::eig_default();
    for n in [5, 16, 40] {
        let a0 = random_symmetric(n, &mut r);
        let exact = eigenvalues(&a0);
        let scale = exact.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let a = SymMatrix::new(a0).unwrap();
        let results = [
            classical_jacobi(&a, &tol).unwrap(),
            cyclic_jacobi(&a, &tol, None).unwrap(),
            mixed_precision_jacobi(&a, &tol, Orthogonalizer::Mgs).unwrap(),
            mixed_precision_jacobi(&a, &tol, Orthogonalizer::Householder).unwrap(),
        ];
        for res in results {
            let err = max_abs_diff(&res.sorted_eigenvalues(), &exact);
            assert!(err <= 100.0 * n as f64 * OMEGA * scale, "n={n} err={err:e}");
            assert!(
                residual_eig(a.matrix(), &res.p, res.t.matrix()).unwrap()
                    <= 100.0 * n as f64 * OMEGA
            );
            assert!(orth_defect(&res.p) <= 100.0 * n as f64 * OMEGA);
        }
    }
}

#[test]
fn svd_solvers_match_oracle() {
    let tol = ToleranceConfig::svd_default();
    for (m, n, seed) in [(6, 4, 1), (30, 12, 2), (48, 48, 3)] {
        let a = random_dense(m, n, seed);
        let exact = oracle_singular_values(&a);
        for res in [
            one_sided_jacobi_svd(&a, &tol, None).unwrap(),
            mixed_precision_svd(&a, &tol, Orthogonalizer::Mgs).unwrap(),
        ] {
            let err = max_abs_diff(&res.sigma, &exact);
            assert!(
                err <= 100.0 * n as f64 * OMEGA * exact[0],
                "{m}x{n} err={err:e}"
            );
            assert!(res.sigma.windows(2).all(|w| w[0] >= w[1]));
            assert!(
                residual_svd(&a, &res.u, &res.sigma, &res.v).unwrap() <= 100.0 * n as f64 * OMEGA
            );
            assert!(orth_defect(&res.u) <= 100.0 * n as f64 * OMEGA);
            assert!(orth_defect(&res.v) <= 100.0 * n as f64 * OMEGA);
        }
    }
}

#[test]
fn generated_rect_matches_oracle() {
    let spec = MatGenSpec::rect(3, 1e4, 40, 20, 5);
    let (a, truth) = generate(&spec).unwrap();
    let mut expected = truth.sorted();
    expected.reverse();
    let got = oracle_singular_values(&a);
    assert!(max_abs_diff(&got, &expected) <= 100.0 * 20.0 * OMEGA * expected[0]);
}
