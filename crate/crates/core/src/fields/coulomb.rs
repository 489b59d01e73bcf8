//! Radial spectrum of the reduced two-component equation with the
//! attractive potential energy `U(r) = −Z q²/r`.
//!
//! For `u(r) = r R(r)`:
//!
//! ```text
//! m₀c² u − ħ²/(2m₀) (u'' − l(l+1) u / r²) + U(r) u = E u
//! ```
//!
//! discretised with the 3-point Laplacian on `r_i = i h`, Dirichlet at
//! `r = 0` and `r = r_max`. The resulting symmetric tridiagonal matrix is
//! solved for its lowest levels by Sturm-sequence bisection. Negative
//! energies mirror the positive ones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::PhysicalParams;

pub const MIN_POINTS: usize = 50;
/// Largest accepted `h·Z`.
pub const MAX_STEP_TIMES_Z: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    r_max: f64,
    n_points: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::rejected(format!(
                "r_max must be positive, got {r_max}"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(Error::rejected(format!(
                "n_points must be at least {MIN_POINTS}, got {n_points}"
            )));
        }
        Ok(Self { r_max, n_points })
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / (self.n_points + 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.spacing()
    }

    /// Same `r_max`, half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            r_max: self.r_max,
            n_points: 2 * (self.n_points + 1) - 1,
        }
    }
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self {
            r_max: 60.0,
            n_points: 6000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoulombSpectrum {
    pub z: f64,
    pub l: usize,
    /// Ascending.
    pub energies_plus: Vec<f64>,
    pub energies_minus: Vec<f64>,
}

/// `m₀c² − m₀ Z² q⁴ / (2ħ² n²)`.
pub fn bohr_level(z: f64, n: usize, params: &PhysicalParams) -> f64 {
    let q2 = params.q * params.q;
    let n = n as f64;
    params.rest_energy() - params.m0 * z * z * q2 * q2 / (2.0 * params.hbar * params.hbar * n * n)
}

/// Diagonal and off-diagonal of the discretised radial operator.
pub fn radial_tridiagonal(
    z: f64,
    l: usize,
    grid: &RadialGrid,
    params: &PhysicalParams,
) -> (Vec<f64>, Vec<f64>) {
    let h = grid.spacing();
    let t = params.hbar * params.hbar / (2.0 * params.m0);
    let centrifugal = t * (l * (l + 1)) as f64;
    let coupling = z * params.q * params.q;
    let diag = (0..grid.n_points())
        .map(|i| {
            let r = grid.node(i);
            params.rest_energy() + 2.0 * t / (h * h) + centrifugal / (r * r) - coupling / r
        })
        .collect();
    let off = vec![-t / (h * h); grid.n_points() - 1];
    (diag, off)
}

pub fn coulomb_radial_spectrum(
    z: f64,
    l: usize,
    grid: &RadialGrid,
    params: &PhysicalParams,
    n_levels: usize,
) -> Result<CoulombSpectrum> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::rejected(format!("Z must be positive, got {z}")));
    }
    if n_levels == 0 || n_levels > grid.n_points() {
        return Err(Error::rejected(format!(
            "n_levels must be in 1..={}, got {n_levels}",
            grid.n_points()
        )));
    }
    if grid.spacing() * z >= MAX_STEP_TIMES_Z {
        let suggested = (grid.r_max() * z / MAX_STEP_TIMES_Z).ceil() as usize;
        return Err(Error::rejected(format!(
            "grid too coarse: h*Z = {:.4} must be below {MAX_STEP_TIMES_Z}; try n_points >= {suggested}",
            grid.spacing() * z
        )));
    }
    let (diag, off) = radial_tridiagonal(z, l, grid, params);
    let energies_plus: Vec<f64> = (0..n_levels)
        .map(|k| tridiagonal_eigenvalue(&diag, &off, k))
        .collect();
    let energies_minus = energies_plus.iter().map(|e| -e).collect();
    Ok(CoulombSpectrum {
        z,
        l,
        energies_plus,
        energies_minus,
    })
}

/// Number of eigenvalues strictly below `x` (Sturm count via the LDLᵀ
/// pivots of `T − xI`).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut pivot = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i == 0 {
            0.0
        } else {
            off[i - 1] * off[i - 1] / pivot
        };
        pivot = d - x - coupling;
        if pivot == 0.0 {
            pivot = -f64::EPSILON * (d.abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// `k`-th smallest eigenvalue (0-based) of a symmetric tridiagonal matrix.
pub fn tridiagonal_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> f64 {
    // Gershgorin interval
    let n = diag.len();
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        left + right
    };
    let mut lo = (0..n)
        .map(|i| diag[i] - radius(i))
        .fold(f64::INFINITY, f64::min);
    let mut hi = (0..n)
        .map(|i| diag[i] + radius(i))
        .fold(f64::NEG_INFINITY, f64::max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConvergence {
    pub exact: f64,
    pub coarse: f64,
    pub fine: f64,
    /// `(coarse − exact) / (fine − exact)`; 4 for second-order convergence.
    pub error_ratio: f64,
}

/// Error of radial level `index` against the Bohr formula on `grid` and on
/// the grid with half the spacing.
pub fn grid_convergence(
    z: f64,
    l: usize,
    grid: &RadialGrid,
    params: &PhysicalParams,
    index: usize,
) -> Result<GridConvergence> {
    let coarse = coulomb_radial_spectrum(z, l, grid, params, index + 1)?.energies_plus[index];
    let fine =
        coulomb_radial_spectrum(z, l, &grid.refined(), params, index + 1)?.energies_plus[index];
    let exact = bohr_level(z, index + l + 1, params);
    Ok(GridConvergence {
        exact,
        coarse,
        fine,
        error_ratio: (coarse - exact) / (fine - exact),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> PhysicalParams {
        PhysicalParams::default()
    }

    #[test]
    fn grid_geometry() {
        let g = RadialGrid::new(10.0, 99).unwrap();
        assert!((g.spacing() - 0.1).abs() < 1e-15);
        assert!((g.node(0) - 0.1).abs() < 1e-15);
        assert!((g.node(98) - 9.9).abs() < 1e-12);
        assert!((g.refined().spacing() - 0.05).abs() < 1e-15);
        assert!(RadialGrid::new(10.0, 49).is_err());
        assert!(RadialGrid::new(-1.0, 100).is_err());
    }

    #[test]
    fn bisection_on_small_matrix() {
        // tridiag(−1, 2, −1) of size 5: 2 − 2cos(kπ/6)
        let diag = vec![2.0; 5];
        let off = vec![-1.0; 4];
        for k in 0..5 {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 6.0).cos();
            assert!((tridiagonal_eigenvalue(&diag, &off, k) - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn guard_and_usage_errors() {
        let coarse = RadialGrid::new(60.0, 600).unwrap();
        let err = coulomb_radial_spectrum(1.0, 0, &coarse, &nat(), 1).unwrap_err();
        assert!(err.to_string().contains("n_points >="));
        assert!(coulomb_radial_spectrum(1.0, 0, &RadialGrid::default(), &nat(), 0).is_err());
        assert!(coulomb_radial_spectrum(0.0, 0, &RadialGrid::default(), &nat(), 1).is_err());
    }

    #[test]
    fn hydrogen_levels_default_grid() {
        let s = coulomb_radial_spectrum(1.0, 0, &RadialGrid::default(), &nat(), 2).unwrap();
        assert!((s.energies_plus[0] - 0.5).abs() < 5e-4);
        assert!((s.energies_plus[1] - 0.875).abs() < 5e-4);
        assert_eq!(s.energies_minus[0], -s.energies_plus[0]);

        let p = coulomb_radial_spectrum(1.0, 1, &RadialGrid::default(), &nat(), 1).unwrap();
        assert!((p.energies_plus[0] - 0.875).abs() < 5e-4);
    }

    #[test]
    fn helium_like_ground_state() {
        let s = coulomb_radial_spectrum(2.0, 0, &RadialGrid::default(), &nat(), 1).unwrap();
        assert!((s.energies_plus[0] + 1.0).abs() < 2e-3);
    }

    #[test]
    fn bohr_formula() {
        assert_eq!(bohr_level(1.0, 1, &nat()), 0.5);
        assert_eq!(bohr_level(1.0, 2, &nat()), 0.875);
        assert_eq!(bohr_level(2.0, 1, &nat()), -1.0);
    }
}
