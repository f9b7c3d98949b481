mod common;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use proptest::prelude::*;
use recoupling::dmatrix::{d_matrix, little_d, DIndex};
use recoupling::Spin;

const TOL: f64 = 1e-10;

fn grid() -> impl Iterator<Item = f64> {
    (0..50).map(|k| PI * k as f64 / 49.0)
}

fn max_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

#[test]
fn spin_half_closed_form() {
    let s = Spin::from_twice(1);
    for t in grid() {
        let (c, sn) = ((t / 2.0).cos(), (t / 2.0).sin());
        let want = DMatrix::from_row_slice(2, 2, &[c, sn, -sn, c]);
        assert!(max_diff(&d_matrix(s, t), &want) < 1e-14, "θ = {t}");
    }
}

#[test]
fn spin_one_closed_form() {
    let s = Spin::from_twice(2);
    for t in grid() {
        let (c, sn) = (t.cos(), t.sin());
        let r = 2f64.sqrt();
        // rows and columns m = −1, 0, 1
        let want = DMatrix::from_row_slice(
            3,
            3,
            &[
                (1.0 + c) / 2.0,
                sn / r,
                (1.0 - c) / 2.0,
                -sn / r,
                c,
                sn / r,
                (1.0 - c) / 2.0,
                -sn / r,
                (1.0 + c) / 2.0,
            ],
        );
        assert!(max_diff(&d_matrix(s, t), &want) < 1e-14, "θ = {t}");
    }
}

#[test]
fn matches_matrix_exponential() {
    for ts in 0..=10 {
        for t in grid() {
            let got = d_matrix(Spin::from_twice(ts as u32), t);
            let want = common::d_matrix_expm(ts, t);
            assert!(max_diff(&got, &want) < TOL, "s = {ts}/2, θ = {t}");
        }
    }
}

#[test]
fn at_pi_is_signed_antidiagonal() {
    for ts in 0..=10i64 {
        let d = d_matrix(Spin::from_twice(ts as u32), PI);
        let n = (ts + 1) as usize;
        for r in 0..n {
            for c in 0..n {
                let v = d[(r, c)];
                if r + c == n - 1 {
                    // d_{ν,−ν}(π) = (−1)^{s+ν}
                    let nu = 2 * r as i64 - ts;
                    let want = if ((ts + nu) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    assert!((v - want).abs() < TOL);
                } else {
                    assert!(v.abs() < TOL);
                }
            }
        }
    }
}

#[test]
fn orthogonal_symmetric_and_composable() {
    for ts in 0..=10u32 {
        let s = Spin::from_twice(ts);
        let n = ts as usize + 1;
        for a in grid() {
            let d = d_matrix(s, a);
            assert!(max_diff(&(d.transpose() * &d), &DMatrix::identity(n, n)) < TOL);
            for r in 0..n {
                for c in 0..n {
                    let parity = if (r + c) % 2 == 0 { 1.0 } else { -1.0 };
                    assert!((d[(r, c)] - parity * d[(c, r)]).abs() < TOL);
                }
            }
            for b in grid().step_by(7) {
                let prod = &d * d_matrix(s, b);
                assert!(max_diff(&prod, &d_matrix(s, a + b)) < TOL);
            }
        }
    }
}

#[test]
fn elementwise_agrees_with_matrix() {
    let s = Spin::from_twice(7);
    let d = d_matrix(s, 1.1);
    for r in 0..8i64 {
        for c in 0..8i64 {
            let idx = DIndex::new(s, 2 * r - 7, 2 * c - 7).unwrap();
            assert_eq!(little_d(idx, 1.1), d[(r as usize, c as usize)]);
        }
    }
    assert!(DIndex::new(s, 9, 1).is_err());
    assert!(DIndex::new(s, 2, 1).is_err());
}

proptest! {
    #[test]
    fn rows_are_unit_vectors(ts in 0u32..=20, t in -10.0f64..10.0) {
        let d = d_matrix(Spin::from_twice(ts), t);
        for r in 0..=ts as usize {
            let n: f64 = d.row(r).iter().map(|x| x * x).sum();
            prop_assert!((n - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn reversal_symmetry(ts in 0u32..=12, t in 0.0f64..PI) {
        // d_{νμ}(θ) = d_{−μ,−ν}(θ)
        let d = d_matrix(Spin::from_twice(ts), t);
        let n = ts as usize;
        for r in 0..=n {
            for c in 0..=n {
                prop_assert!((d[(r, c)] - d[(n - c, n - r)]).abs() < TOL);
            }
        }
    }
}
