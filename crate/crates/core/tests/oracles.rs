//! Library results against independent solvers.

#![allow(clippy::needless_range_loop)]

use nalgebra::{DMatrix, SymmetricEigen};
use negspin_core::fields::coulomb::radial_tridiagonal;
use negspin_core::fields::{bohr_level, coulomb_radial_spectrum, RadialGrid};
use negspin_core::matrix::hermitian_eig;
use negspin_core::rng::SeededDraws;
use negspin_core::{ComplexMatrix, PhysicalParams};
use num_complex::Complex64;

fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let mut draws = SeededDraws::new(seed);
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        rows[i][i] = Complex64::new(draws.uniform(-3.0, 3.0), 0.0);
        for j in i + 1..n {
            let z = draws.unit_disc();
            rows[i][j] = z;
            rows[j][i] = z.conj();
        }
    }
    ComplexMatrix::from_rows(&rows)
}

/// Complex Hermitian `A = X + iY` as the real symmetric `[[X, −Y], [Y, X]]`,
/// whose spectrum is that of `A` with every eigenvalue doubled.
fn real_embedding(a: &ComplexMatrix) -> DMatrix<f64> {
    let n = a.rows();
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = a[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

#[test]
fn jacobi_matches_nalgebra() {
    for (n, seed) in [(4, 1), (12, 2), (40, 3)] {
        let a = random_hermitian(n, seed);
        let ours = hermitian_eig(&a).unwrap();
        let mut theirs: Vec<f64> = SymmetricEigen::new(real_embedding(&a))
            .eigenvalues
            .iter()
            .copied()
            .collect();
        theirs.sort_by(f64::total_cmp);
        for (k, e) in ours.eigenvalues.iter().enumerate() {
            assert!(
                (e - theirs[2 * k]).abs() < 1e-10,
                "n={n} k={k}: {e} vs {}",
                theirs[2 * k]
            );
            assert!((e - theirs[2 * k + 1]).abs() < 1e-10);
        }
        assert!(ours.reconstruction_residual(&a) < 1e-10);
        assert!(ours.orthonormality_residual() < 1e-12);
    }
}

#[test]
fn bisection_matches_dense_solver() {
    let params = PhysicalParams::default();
    let grid = RadialGrid::new(8.0, 200).unwrap();
    for l in [0, 1] {
        let (diag, off) = radial_tridiagonal(1.0, l, &grid, &params);
        let n = diag.len();
        let dense = DMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => diag[i],
            1 => off[i.min(j)],
            _ => 0.0,
        });
        let mut theirs: Vec<f64> = SymmetricEigen::new(dense)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        theirs.sort_by(f64::total_cmp);
        let ours = coulomb_radial_spectrum(1.0, l, &grid, &params, 3).unwrap();
        for k in 0..3 {
            assert!(
                (ours.energies_plus[k] - theirs[k]).abs() < 1e-10,
                "l={l} k={k}"
            );
        }
    }
}

#[test]
fn richardson_extrapolation_recovers_bohr_levels() {
    let params = PhysicalParams::default();
    let coarse = RadialGrid::default();
    let fine = coarse.refined();
    for (z, l, index) in [(1.0, 0, 0), (1.0, 0, 1), (1.0, 1, 0), (2.0, 0, 0)] {
        let a = coulomb_radial_spectrum(z, l, &coarse, &params, index + 1)
            .unwrap()
            .energies_plus[index];
        let b = coulomb_radial_spectrum(z, l, &fine, &params, index + 1)
            .unwrap()
            .energies_plus[index];
        let extrapolated = (4.0 * b - a) / 3.0;
        let exact = bohr_level(z, index + l + 1, &params);
        assert!(
            (extrapolated - exact).abs() < 2e-5,
            "Z={z} l={l} k={index}: {extrapolated} vs {exact}"
        );
        assert!((a - exact).abs() > (extrapolated - exact).abs());
    }
}
