mod common;

use common::*;
use mpjacobi::DenseMatrix;

#[test]
fn oracle_closed_forms() {
    let a = DenseMatrix::from_row_major(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
    let ev = eigenvalues(&a);
    assert!((ev[0] - 1.0).abs() <= 8.0 * OMEGA && (ev[1] - 3.0).abs() <= 8.0 * OMEGA);
    let d = DenseMatrix::from_diagonal(&[5.0, -2.0, 0.0, 5.0]);
    assert!(max_abs_diff(&eigenvalues(&d), &[-2.0, 0.0, 5.0, 5.0]) <= 16.0 * OMEGA);
    // 1-2-1 tridiagonal: 2 - 2 cos(k pi / (n + 1))
    let n = 7;
    let t = DenseMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
        0 => 2.0,
        1 => -1.0,
        _ => 0.0,
    });
    let exact: Vec<f64> = (1..=n)
        .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos())
        .collect();
    assert!(max_abs_diff(&eigenvalues(&t), &exact) <= 16.0 * OMEGA);
}
