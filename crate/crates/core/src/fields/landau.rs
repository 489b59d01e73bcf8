//! Charged bispinor in a uniform magnetic field `B = b ẑ`.
//!
//! Symmetric gauge, `Π = p − (q/c)A`. With `κ = ħ|q|b/c` and
//! `s = sign(q b)` the transverse kinetic momenta satisfy
//! `[Πx, Πy] = i s κ`, so
//!
//! ```text
//! a  = (Πx + i s Πy) / √(2κ),   [a, a†] = 1
//! Πx = √(κ/2) (a + a†),          Πy = −i s √(κ/2) (a − a†)
//! ```
//!
//! The guiding-centre oscillator decouples from every operator here, so
//! only the cyclotron oscillator is kept, truncated at level `n_max`. The
//! basis index is `4n + d` with `d` the Dirac-Pauli component.
//!
//! Truncation leaves the top levels with an incomplete `a†` coupling.
//! Identities and spectra are asserted only on interior levels
//! `n ≤ n_max − 2`; an eigenvector counts as interior when its weight on
//! interior basis states is 1 (see [`truncated_spectrum`]).

use serde::{Deserialize, Serialize};

use crate::clifford::DiracBasis;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eig, residual_norm, ComplexMatrix, I, ZERO};
use crate::report::CheckReport;
use crate::spectral::PhysicalParams;

pub const MIN_N_MAX: usize = 8;
/// Number of top oscillator levels treated as truncation edge.
pub const EDGE_LEVELS: usize = 2;
const INTERIOR_WEIGHT: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformBField {
    b: f64,
}

impl UniformBField {
    pub fn new(b: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::rejected(format!(
                "field magnitude must be positive, got {b}"
            )));
        }
        Ok(Self { b })
    }

    pub fn magnitude(&self) -> f64 {
        self.b
    }

    /// `ω_c = |q| b / (m₀ c)`.
    pub fn cyclotron_frequency(&self, params: &PhysicalParams) -> f64 {
        params.q.abs() * self.b / (params.m0 * params.c)
    }
}

/// Truncated (cyclotron level) ⊗ (Dirac component) basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LandauBasis {
    pub n_max: usize,
}

impl LandauBasis {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < MIN_N_MAX {
            return Err(Error::rejected(format!(
                "n_max = {n_max} is too coarse; use n_max >= {MIN_N_MAX} (40 is a good default)"
            )));
        }
        Ok(Self { n_max })
    }

    pub fn levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        4 * self.levels()
    }

    pub fn orbital_level(&self, index: usize) -> usize {
        index / 4
    }

    pub fn is_interior(&self, index: usize) -> bool {
        self.orbital_level(index) + EDGE_LEVELS <= self.n_max
    }

    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_interior(i)).collect()
    }

    /// Basis states excluded from every assertion.
    pub fn edge_state_count(&self) -> usize {
        self.dim() - self.interior_indices().len()
    }
}

/// `a` on levels `0..=n_max`.
fn lowering(levels: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(levels, levels);
    for n in 1..levels {
        a[(n - 1, n)] = (n as f64).sqrt().into();
    }
    a
}

/// Pieces of the coupled Hamiltonian on the truncated basis.
struct LandauOperators {
    /// α·Π
    alpha_pi: ComplexMatrix,
    /// β on the full space
    beta: ComplexMatrix,
    /// iβγ₅ on the full space
    ibg5: ComplexMatrix,
}

fn landau_operators(
    field: &UniformBField,
    pz: f64,
    basis: &LandauBasis,
    params: &PhysicalParams,
) -> Result<LandauOperators> {
    if params.q == 0.0 {
        return Err(Error::rejected(
            "a neutral particle has no Landau levels (q = 0)",
        ));
    }
    if !pz.is_finite() {
        return Err(Error::rejected("pz must be finite"));
    }
    let dirac = DiracBasis::default();
    let levels = basis.levels();
    let kappa = params.hbar * params.q.abs() * field.magnitude() / params.c;
    let s = (params.q * field.magnitude()).signum();
    let a = lowering(levels);
    let ad = a.adjoint();
    let amp = (kappa / 2.0).sqrt();
    let pi_x = (&a + &ad).scale_real(amp);
    let pi_y = (&a - &ad).scale(-I * s * amp);
    let id = ComplexMatrix::identity(levels);

    let alpha_pi = &(&pi_x.kron(&dirac.alpha[0]) + &pi_y.kron(&dirac.alpha[1]))
        + &id.kron(&dirac.alpha[2]).scale_real(pz);
    Ok(LandauOperators {
        alpha_pi,
        beta: id.kron(&dirac.beta),
        ibg5: id.kron(&dirac.i_beta_gamma5()),
    })
}

impl LandauOperators {
    fn hamiltonian(&self, params: &PhysicalParams) -> ComplexMatrix {
        let kinetic = &(&self.ibg5 * &self.alpha_pi) * &self.alpha_pi;
        let h = &self.alpha_pi.scale_real(params.c) + &self.beta.scale_real(params.rest_energy());
        &h + &kinetic.scale_real(0.5 / params.m0)
    }

    /// `S = m₀c² I + (α·Π)²/(2m₀)`.
    fn positive_root(&self, params: &PhysicalParams) -> ComplexMatrix {
        let n = self.alpha_pi.rows();
        let sq = &self.alpha_pi * &self.alpha_pi;
        &ComplexMatrix::identity(n).scale_real(params.rest_energy())
            + &sq.scale_real(0.5 / params.m0)
    }
}

/// `cα·Π + m₀c²β + (i/2m₀) βγ₅ (α·Π)²` on the truncated basis.
pub fn landau_hamiltonian_matrix(
    field: &UniformBField,
    pz: f64,
    n_max: usize,
    params: &PhysicalParams,
) -> Result<ComplexMatrix> {
    let basis = LandauBasis::new(n_max)?;
    Ok(landau_operators(field, pz, &basis, params)?.hamiltonian(params))
}

/// Landau Hamiltonian plus a constant scalar potential energy `v0`.
pub fn minimal_coupling_hamiltonian(
    v0: f64,
    field: &UniformBField,
    pz: f64,
    n_max: usize,
    params: &PhysicalParams,
) -> Result<ComplexMatrix> {
    if !v0.is_finite() {
        return Err(Error::rejected("v0 must be finite"));
    }
    let h = landau_hamiltonian_matrix(field, pz, n_max, params)?;
    Ok(&h + &ComplexMatrix::identity(h.rows()).scale_real(v0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandauLevel {
    pub k: usize,
    pub energy_plus: f64,
    pub energy_minus: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandauSpectrum {
    pub omega_c: f64,
    pub pz: f64,
    pub levels: Vec<LandauLevel>,
}

/// `E±(k) = ±(m₀c² + ħω_c k + pz²/2m₀)`, from `(σ·Π)² = Π² − (qħ/c) σ·B`.
/// Level 0 is spin-polarised; every higher level holds two spin states.
pub fn landau_levels_analytic(
    field: &UniformBField,
    pz: f64,
    k_max: usize,
    params: &PhysicalParams,
) -> LandauSpectrum {
    let omega_c = field.cyclotron_frequency(params);
    let levels = (0..=k_max)
        .map(|k| {
            let e = params.rest_energy()
                + params.hbar * omega_c * k as f64
                + pz * pz / (2.0 * params.m0);
            LandauLevel {
                k,
                energy_plus: e,
                energy_minus: -e,
                multiplicity: if k == 0 { 1 } else { 2 },
            }
        })
        .collect();
    LandauSpectrum {
        omega_c,
        pz,
        levels,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InteriorLevel {
    pub energy: f64,
    /// Number of eigenvectors in this cluster supported on interior states.
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Ascending, only clusters with at least one interior eigenvector.
    pub interior: Vec<InteriorLevel>,
    pub edge_states: usize,
}

impl TruncatedSpectrum {
    pub fn nearest(&self, energy: f64) -> Option<&InteriorLevel> {
        self.interior.iter().min_by(|a, b| {
            (a.energy - energy)
                .abs()
                .total_cmp(&(b.energy - energy).abs())
        })
    }

    /// Worst distance between an interior level at `E` and the nearest
    /// interior level at `−E`, together with the count mismatch.
    pub fn pairing_residual(&self) -> f64 {
        self.interior
            .iter()
            .map(|lvl| match self.nearest(-lvl.energy) {
                Some(partner) if partner.count == lvl.count => (partner.energy + lvl.energy).abs(),
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }
}

/// Diagonalises `h` and keeps, per degenerate cluster, the dimension of
/// the part of the eigenspace lying entirely on interior basis states.
/// Within a cluster `V`, that dimension is the number of eigenvalues of
/// `V† Q V` equal to 1, where `Q` projects onto interior states; this is
/// independent of how the solver mixes degenerate vectors.
pub fn truncated_spectrum(h: &ComplexMatrix, basis: &LandauBasis) -> Result<TruncatedSpectrum> {
    if h.rows() != basis.dim() {
        return Err(Error::rejected(format!(
            "matrix has dimension {}, basis {}",
            h.rows(),
            basis.dim()
        )));
    }
    let eig = hermitian_eig(h)?;
    let interior_rows = basis.interior_indices();
    let mut interior = Vec::new();
    for cluster in eig.clusters() {
        let d = cluster.len();
        let mut weight = ComplexMatrix::zeros(d, d);
        for (i, ci) in cluster.clone().enumerate() {
            for (j, cj) in cluster.clone().enumerate() {
                let mut acc = ZERO;
                for &r in &interior_rows {
                    acc += eig.eigenvectors[(r, ci)].conj() * eig.eigenvectors[(r, cj)];
                }
                weight[(i, j)] = acc;
            }
        }
        let count = hermitian_eig(&weight)?
            .eigenvalues
            .iter()
            .filter(|&&w| w > INTERIOR_WEIGHT)
            .count();
        if count > 0 {
            let energy = cluster.clone().map(|k| eig.eigenvalues[k]).sum::<f64>() / d as f64;
            interior.push(InteriorLevel { energy, count });
        }
    }
    Ok(TruncatedSpectrum {
        eigenvalues: eig.eigenvalues,
        interior,
        edge_states: basis.edge_state_count(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelComparison {
    pub k: usize,
    pub analytic_plus: f64,
    pub analytic_minus: f64,
    pub multiplicity: usize,
    pub numeric_plus: f64,
    pub numeric_minus: f64,
    pub numeric_multiplicity: usize,
    /// `max(|ΔE₊|, |ΔE₋|)`; infinite when multiplicities disagree.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandauComparison {
    pub analytic: LandauSpectrum,
    pub numeric: TruncatedSpectrum,
    pub levels: Vec<LevelComparison>,
}

/// Analytic ladder against interior eigenvalues of the truncated matrix,
/// both shifted by `v0`.
pub fn compare_landau_levels(
    field: &UniformBField,
    pz: f64,
    n_max: usize,
    k_max: usize,
    v0: f64,
    params: &PhysicalParams,
) -> Result<LandauComparison> {
    let basis = LandauBasis::new(n_max)?;
    if k_max + EDGE_LEVELS > n_max {
        return Err(Error::rejected(format!(
            "k_max = {k_max} reaches the truncation edge; need k_max <= n_max - {EDGE_LEVELS}"
        )));
    }
    let h = minimal_coupling_hamiltonian(v0, field, pz, n_max, params)?;
    let numeric = truncated_spectrum(&h, &basis)?;
    let analytic = landau_levels_analytic(field, pz, k_max, params);
    let levels = analytic
        .levels
        .iter()
        .map(|lvl| {
            let plus = numeric.nearest(lvl.energy_plus + v0).copied();
            let minus = numeric.nearest(lvl.energy_minus + v0).copied();
            let (numeric_plus, count) = plus.map_or((f64::NAN, 0), |l| (l.energy, l.count));
            let numeric_minus = minus.map_or(f64::NAN, |l| l.energy);
            let counts_agree =
                count == lvl.multiplicity && minus.is_some_and(|l| l.count == lvl.multiplicity);
            let residual = if counts_agree {
                (numeric_plus - lvl.energy_plus - v0)
                    .abs()
                    .max((numeric_minus - lvl.energy_minus - v0).abs())
            } else {
                f64::INFINITY
            };
            LevelComparison {
                k: lvl.k,
                analytic_plus: lvl.energy_plus + v0,
                analytic_minus: lvl.energy_minus + v0,
                multiplicity: lvl.multiplicity,
                numeric_plus,
                numeric_minus,
                numeric_multiplicity: count,
                residual,
            }
        })
        .collect();
    Ok(LandauComparison {
        analytic,
        numeric,
        levels,
    })
}

/// `H² = S²` and `[H, S] = 0` on interior states, with
/// `S = m₀c² + (α·Π)²/(2m₀)`, plus Hermiticity of `H`.
pub fn square_identity_check(
    field: &UniformBField,
    pz: f64,
    n_max: usize,
    params: &PhysicalParams,
) -> Result<CheckReport> {
    let basis = LandauBasis::new(n_max)?;
    let ops = landau_operators(field, pz, &basis, params)?;
    let h = ops.hamiltonian(params);
    let s = ops.positive_root(params);
    let interior = basis.interior_indices();

    let h2 = (&h * &h).principal_submatrix(&interior);
    let s2 = (&s * &s).principal_submatrix(&interior);
    let comm = h.commutator(&s).principal_submatrix(&interior);

    let mut report = CheckReport::new();
    report.push("square_identity_interior", residual_norm(&h2, &s2)?, 1e-10);
    report.push("commutator_h_s_interior", comm.max_abs(), 1e-10);
    report.push("hermiticity", h.hermiticity_residual(), 1e-12);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> PhysicalParams {
        PhysicalParams::default()
    }

    fn field(b: f64) -> UniformBField {
        UniformBField::new(b).unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(UniformBField::new(0.0).is_err());
        assert!(UniformBField::new(-1.0).is_err());
        assert!(landau_hamiltonian_matrix(&field(1.0), 0.0, 7, &nat()).is_err());
        let neutral = PhysicalParams::new(1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(landau_hamiltonian_matrix(&field(1.0), 0.0, 10, &neutral).is_err());
        assert!(compare_landau_levels(&field(1.0), 0.0, 10, 9, 0.0, &nat()).is_err());
    }

    #[test]
    fn ladder_commutator_in_interior() {
        let a = lowering(12);
        let comm = a.commutator(&a.adjoint());
        for n in 0..11 {
            assert!((comm[(n, n)].re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn kinetic_momenta_commutator_sign() {
        // [Πx, Πy] = i ħ q B / c on interior levels
        for q in [-1.0, 1.0] {
            let params = PhysicalParams::new(1.0, 1.0, 1.0, q).unwrap();
            let basis = LandauBasis::new(10).unwrap();
            let a = lowering(basis.levels());
            let ad = a.adjoint();
            let s = q.signum();
            let pi_x = (&a + &ad).scale_real(0.5f64.sqrt());
            let pi_y = (&a - &ad).scale(-I * s * 0.5f64.sqrt());
            let comm = pi_x.commutator(&pi_y);
            assert!((comm[(3, 3)] - I * params.q).norm() < 1e-14);
        }
    }

    #[test]
    fn analytic_examples() {
        let e = |b: f64, pz: f64, k: usize| {
            landau_levels_analytic(&field(b), pz, k, &nat()).levels[k].energy_plus
        };
        assert_eq!(e(1.0, 0.0, 0), 1.0);
        assert_eq!(e(2.0, 0.0, 1), 3.0);
        assert_eq!(e(1.0, 1.0, 0), 1.5);
        let spec = landau_levels_analytic(&field(1.0), 0.0, 3, &nat());
        let mult: Vec<_> = spec.levels.iter().map(|l| l.multiplicity).collect();
        assert_eq!(mult, vec![1, 2, 2, 2]);
        assert!(spec.levels.iter().all(|l| l.energy_minus == -l.energy_plus));
    }

    #[test]
    fn edge_bookkeeping() {
        let basis = LandauBasis::new(30).unwrap();
        assert_eq!(basis.dim(), 124);
        assert_eq!(basis.edge_state_count(), 8);
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let h = landau_hamiltonian_matrix(&field(1.3), 0.7, 12, &nat()).unwrap();
        assert!(h.hermiticity_residual() < 1e-12);
    }

    #[test]
    fn truncated_matches_analytic() {
        let cmp = compare_landau_levels(&field(1.0), 0.0, 20, 3, 0.0, &nat()).unwrap();
        for lvl in &cmp.levels {
            assert!(lvl.residual < 1e-8, "{lvl:?}");
        }
        assert!(cmp.numeric.pairing_residual() < 1e-8);
    }

    #[test]
    fn scalar_shift() {
        let cmp = compare_landau_levels(&field(1.0), 0.0, 16, 2, 0.3, &nat()).unwrap();
        let plus: Vec<_> = cmp.levels.iter().map(|l| l.numeric_plus).collect();
        for (e, x) in plus.iter().zip([1.3, 2.3, 3.3]) {
            assert!((e - x).abs() < 1e-8);
        }
    }

    #[test]
    fn square_identity_small_basis() {
        let r = square_identity_check(&field(1.0), 0.4, 12, &nat()).unwrap();
        assert!(r.overall_pass(), "{r:?}");
    }
}
