//! Free-particle Hamiltonians and their spectra.
//!
//! Two models share the 4×4 bispinor space:
//!
//! * Dirac: `H_D = cα·p + m₀c²β`, eigenvalues `±√(c²p² + m₀²c⁴)`.
//! * Linearised nonrelativistic: `H = cα·p + m₀c²β + iβγ₅(α·p)²/(2m₀)`.
//!   The three terms anticommute pairwise, so `H² = (m₀c² + p²/2m₀)²` and
//!   the spectrum is `±(m₀c² + p²/2m₀)`, each twice.
//!
//! Eigenstates are labelled by energy branch and helicity `Σ·p̂`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::DiracBasis;
use crate::error::{Error, Result};
use crate::matrix::{expectation, hermitian_eig, inner, residual_norm, vec_norm, ComplexMatrix};
use crate::report::CheckReport;

/// Tolerance for matrix identities of the free Hamiltonians (relative).
pub const OPERATOR_TOL: f64 = 1e-12;
/// Tolerance for expectation-value identities (relative).
pub const EXPECTATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub m0: f64,
    pub c: f64,
    pub hbar: f64,
    /// Signed charge.
    pub q: f64,
}

impl Default for PhysicalParams {
    /// Natural units with an electron-like charge.
    fn default() -> Self {
        Self {
            m0: 1.0,
            c: 1.0,
            hbar: 1.0,
            q: -1.0,
        }
    }
}

impl PhysicalParams {
    pub fn new(m0: f64, c: f64, hbar: f64, q: f64) -> Result<Self> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(m0) && positive(c) && positive(hbar)) {
            return Err(Error::rejected(format!(
                "m0, c, hbar must be positive and finite (got {m0}, {c}, {hbar})"
            )));
        }
        if !q.is_finite() {
            return Err(Error::rejected("charge must be finite"));
        }
        Ok(Self { m0, c, hbar, q })
    }

    pub fn rest_energy(&self) -> f64 {
        self.m0 * self.c * self.c
    }

    /// Nonrelativistic energy `m₀c² + p²/2m₀`.
    pub fn nonrel_energy(&self, p_sq: f64) -> f64 {
        self.rest_energy() + p_sq / (2.0 * self.m0)
    }

    pub fn dirac_energy(&self, p_sq: f64) -> f64 {
        (self.c * self.c * p_sq + self.rest_energy().powi(2)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MomentumVector {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl MomentumVector {
    pub const ZERO: Self = Self {
        px: 0.0,
        py: 0.0,
        pz: 0.0,
    };

    pub fn new(px: f64, py: f64, pz: f64) -> Self {
        Self { px, py, pz }
    }

    pub fn along_z(pz: f64) -> Self {
        Self::new(0.0, 0.0, pz)
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.px, self.py, self.pz]
    }

    pub fn norm_sq(&self) -> f64 {
        self.px * self.px + self.py * self.py + self.pz * self.pz
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|x| x.is_finite())
    }

    pub fn dot(&self, v: [f64; 3]) -> f64 {
        self.px * v[0] + self.py * v[1] + self.pz * v[2]
    }
}

/// Which free Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeModel {
    Dirac,
    /// The linearised nonrelativistic operator with the iβγ₅ kinetic term.
    #[serde(rename = "bruce")]
    Linearized,
}

impl FreeModel {
    /// Positive branch energy in closed form.
    pub fn closed_form_energy(self, p: &MomentumVector, params: &PhysicalParams) -> f64 {
        match self {
            FreeModel::Dirac => params.dirac_energy(p.norm_sq()),
            FreeModel::Linearized => params.nonrel_energy(p.norm_sq()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    pub fn of(energy: f64) -> Self {
        if energy >= 0.0 {
            Branch::Positive
        } else {
            Branch::Negative
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Branch::Positive => 1.0,
            Branch::Negative => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Positive => "positive",
            Branch::Negative => "negative",
        }
    }
}

pub fn dirac_hamiltonian(p: &MomentumVector, params: &PhysicalParams) -> ComplexMatrix {
    let basis = DiracBasis::default();
    &basis.alpha_dot(p.as_array()).scale_real(params.c)
        + &basis.beta.scale_real(params.rest_energy())
}

/// `cα·p + m₀c²β + iβγ₅(α·p)²/(2m₀)`; the square `(α·p)²` is formed as a
/// matrix product.
pub fn linearized_hamiltonian(p: &MomentumVector, params: &PhysicalParams) -> ComplexMatrix {
    let basis = DiracBasis::default();
    let a_p = basis.alpha_dot(p.as_array());
    let kinetic = &(&basis.i_beta_gamma5() * &a_p) * &a_p;
    let h = &a_p.scale_real(params.c) + &basis.beta.scale_real(params.rest_energy());
    &h + &kinetic.scale_real(0.5 / params.m0)
}

pub fn hamiltonian(model: FreeModel, p: &MomentumVector, params: &PhysicalParams) -> ComplexMatrix {
    match model {
        FreeModel::Dirac => dirac_hamiltonian(p, params),
        FreeModel::Linearized => linearized_hamiltonian(p, params),
    }
}

#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
    pub branches: Vec<Branch>,
}

pub fn free_spectrum(
    p: &MomentumVector,
    params: &PhysicalParams,
    model: FreeModel,
) -> Result<EigenSolution> {
    let h = hamiltonian(model, p, params);
    let eig = hermitian_eig(&h)?;
    let branches = eig.eigenvalues.iter().map(|&e| Branch::of(e)).collect();
    Ok(EigenSolution {
        eigenvalues: eig.eigenvalues,
        eigenvectors: eig.eigenvectors,
        branches,
    })
}

/// `|a - b| / max(|b|, 1)`.
pub fn rel_err(actual: f64, expected: f64) -> f64 {
    (actual - expected).abs() / expected.abs().max(1.0)
}

/// Worst relative deviation of the numeric spectrum from `{-s, -s, s, s}`.
pub fn spectrum_residual(eigenvalues: &[f64], s: f64) -> f64 {
    let expected = [-s, -s, s, s];
    eigenvalues
        .iter()
        .zip(expected)
        .map(|(&e, x)| (e - x).abs() / s.abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledState {
    pub energy: f64,
    pub branch: Branch,
    /// ±1.
    pub helicity: i8,
    pub spinor: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledEigenstates {
    /// Ordered (+,+1), (+,−1), (−,+1), (−,−1).
    pub states: Vec<LabeledState>,
    /// Set when `p = 0` and labels are spin-z instead of helicity.
    pub spin_z_fallback: bool,
}

impl LabeledEigenstates {
    pub fn find(&self, branch: Branch, helicity: i8) -> Option<&LabeledState> {
        self.states
            .iter()
            .find(|s| s.branch == branch && s.helicity == helicity)
    }

    pub fn overlap_residual(&self) -> f64 {
        let cols: Vec<_> = self.states.iter().map(|s| s.spinor.clone()).collect();
        let v = ComplexMatrix::from_columns(&cols);
        residual_norm(&(&v.adjoint() * &v), &ComplexMatrix::identity(cols.len()))
            .unwrap_or(f64::INFINITY)
    }
}

/// Simultaneous energy/helicity eigenstates. The helicity operator
/// `Σ·p̂` is diagonalised inside each twofold energy eigenspace; at `p = 0`
/// it is replaced by `Σz`.
pub fn helicity_eigenstates(
    p: &MomentumVector,
    params: &PhysicalParams,
    model: FreeModel,
) -> Result<LabeledEigenstates> {
    let basis = DiracBasis::default();
    let h = hamiltonian(model, p, params);
    let eig = hermitian_eig(&h)?;
    let norm = p.norm();
    let spin_z_fallback = norm == 0.0;
    let axis = if spin_z_fallback {
        [0.0, 0.0, 1.0]
    } else {
        p.as_array().map(|x| x / norm)
    };
    let helicity_op = basis.sigma_dot(axis);

    let clusters = eig.clusters();
    if clusters.len() != 2 || clusters.iter().any(|c| c.len() != 2) {
        return Err(Error::NumericFailure {
            iterations: 0,
            reason: format!(
                "expected two doubly degenerate levels, got {:?}",
                eig.eigenvalues
            ),
        });
    }

    let mut states = Vec::with_capacity(4);
    for cluster in clusters {
        let cols: Vec<_> = cluster.clone().map(|k| eig.vector(k)).collect();
        let v = ComplexMatrix::from_columns(&cols);
        let restricted = &(&v.adjoint() * &helicity_op) * &v;
        let sub = hermitian_eig(&restricted)?;
        let rotated = &v * &sub.eigenvectors;
        let energy = cluster.clone().map(|k| eig.eigenvalues[k]).sum::<f64>() / 2.0;
        for (j, &lambda) in sub.eigenvalues.iter().enumerate() {
            states.push(LabeledState {
                energy,
                branch: Branch::of(energy),
                helicity: if lambda >= 0.0 { 1 } else { -1 },
                spinor: rotated.column(j),
            });
        }
    }
    states.sort_by_key(|s| (s.branch == Branch::Negative, -s.helicity));
    Ok(LabeledEigenstates {
        states,
        spin_z_fallback,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationReport {
    pub branch: Branch,
    pub helicity: i8,
    pub energy: f64,
    pub mean_alpha: [f64; 3],
    pub mean_beta: f64,
    pub mean_ibg5: f64,
}

fn real_expectation(op: &ComplexMatrix, v: &[Complex64]) -> f64 {
    let n = inner(v, v).re;
    expectation(op, v).map(|z| z.re / n).unwrap_or(f64::NAN)
}

pub fn expectation_report(
    p: &MomentumVector,
    params: &PhysicalParams,
    model: FreeModel,
    branch: Branch,
    helicity: i8,
) -> Result<ExpectationReport> {
    let labeled = helicity_eigenstates(p, params, model)?;
    let state = labeled.find(branch, helicity).ok_or_else(|| {
        Error::rejected(format!(
            "no state with branch {branch:?} and helicity {helicity}"
        ))
    })?;
    Ok(expectations_of(state))
}

pub fn expectations_of(state: &LabeledState) -> ExpectationReport {
    let basis = DiracBasis::default();
    let v = &state.spinor;
    ExpectationReport {
        branch: state.branch,
        helicity: state.helicity,
        energy: state.energy,
        mean_alpha: [0, 1, 2].map(|k| real_expectation(&basis.alpha[k], v)),
        mean_beta: real_expectation(&basis.beta, v),
        mean_ibg5: real_expectation(&basis.i_beta_gamma5(), v),
    }
}

impl ExpectationReport {
    /// `⟨α⟩ = cp/E`, `⟨β⟩ = m₀c²/E`, and `⟨iβγ₅⟩ = p²/(2m₀E)` for the
    /// linearised model (zero for Dirac, where iβγ₅ anticommutes with H).
    /// The last entry reassembles `E` from the three means.
    pub fn identity_check(
        &self,
        p: &MomentumVector,
        params: &PhysicalParams,
        model: FreeModel,
    ) -> CheckReport {
        let e = self.energy;
        let tag = format!("{}_h{:+}", self.branch.label(), self.helicity);
        let mut report = CheckReport::new();
        for (k, axis) in ["x", "y", "z"].iter().enumerate() {
            let expected = params.c * p.as_array()[k] / e;
            report.push(
                format!("mean_alpha_{axis}_{tag}"),
                rel_err(self.mean_alpha[k], expected),
                EXPECTATION_TOL,
            );
        }
        report.push(
            format!("mean_beta_{tag}"),
            rel_err(self.mean_beta, params.rest_energy() / e),
            EXPECTATION_TOL,
        );
        let kinetic = p.norm_sq() / (2.0 * params.m0);
        let (expected_ibg5, kinetic_weight) = match model {
            FreeModel::Linearized => (kinetic / e, kinetic),
            FreeModel::Dirac => (0.0, 0.0),
        };
        report.push(
            format!("mean_ibg5_{tag}"),
            rel_err(self.mean_ibg5, expected_ibg5),
            EXPECTATION_TOL,
        );
        let reassembled = params.c * p.dot(self.mean_alpha)
            + params.rest_energy() * self.mean_beta
            + kinetic_weight * self.mean_ibg5;
        report.push(
            format!("energy_reassembly_{tag}"),
            rel_err(reassembled, e),
            EXPECTATION_TOL,
        );
        report
    }
}

/// The three anticommutators with α, β, iβγ₅ and the squared-energy
/// identity, as matrix statements for the linearised Hamiltonian.
pub fn operator_identity_report(p: &MomentumVector, params: &PhysicalParams) -> CheckReport {
    let basis = DiracBasis::default();
    let h = linearized_hamiltonian(p, params);
    let i4 = ComplexMatrix::identity(4);
    let p2 = p.norm_sq();
    let rel = |a: &ComplexMatrix, b: &ComplexMatrix| {
        residual_norm(a, b).unwrap_or(f64::INFINITY) / b.max_abs().max(1.0)
    };
    let mut report = CheckReport::new();
    for (k, axis) in ["x", "y", "z"].iter().enumerate() {
        let expected = i4.scale_real(2.0 * params.c * p.as_array()[k]);
        report.push(
            format!("anticommutator_h_alpha_{axis}"),
            rel(&h.anticommutator(&basis.alpha[k]), &expected),
            OPERATOR_TOL,
        );
    }
    report.push(
        "anticommutator_h_beta",
        rel(
            &h.anticommutator(&basis.beta),
            &i4.scale_real(2.0 * params.rest_energy()),
        ),
        OPERATOR_TOL,
    );
    report.push(
        "anticommutator_h_ibg5",
        rel(
            &h.anticommutator(&basis.i_beta_gamma5()),
            &i4.scale_real(p2 / params.m0),
        ),
        OPERATOR_TOL,
    );
    let c2 = params.c * params.c;
    let squared = c2 * p2 + params.rest_energy().powi(2) + p2 * p2 / (4.0 * params.m0 * params.m0);
    report.push(
        "squared_energy_identity",
        rel(&(&h * &h), &i4.scale_real(squared)),
        OPERATOR_TOL,
    );
    report
}

/// Lorentz transformation of `(E', p')` measured in `K'` into the frame `K`,
/// where `K'` moves with velocity `v` relative to `K`:
///
/// `p = p' + (γ−1) v (p'·v)/v² + γ v E'/c²`, then `E = v·p + E'/γ`.
///
/// Negative `E'` is allowed.
pub fn lorentz_transform(
    e_prime: f64,
    p_prime: &MomentumVector,
    v: [f64; 3],
    params: &PhysicalParams,
) -> Result<(f64, MomentumVector)> {
    let c = params.c;
    let v2: f64 = v.iter().map(|x| x * x).sum();
    if !(v2.sqrt() < c) {
        return Err(Error::rejected(format!(
            "|v| = {} must be below c = {c}",
            v2.sqrt()
        )));
    }
    if v2 == 0.0 {
        return Ok((e_prime, *p_prime));
    }
    let gamma = 1.0 / (1.0 - v2 / (c * c)).sqrt();
    let pv = p_prime.dot(v);
    let k = (gamma - 1.0) * pv / v2 + gamma * e_prime / (c * c);
    let p = MomentumVector::new(
        p_prime.px + k * v[0],
        p_prime.py + k * v[1],
        p_prime.pz + k * v[2],
    );
    let e = p.dot(v) + e_prime / gamma;
    Ok((e, p))
}

/// Checks `E_D = v·p + m₀c²γ⁻¹` with `v := ⟨cα⟩` and `γ⁻¹ := ⟨β⟩` taken from
/// the Dirac energy-helicity eigenstates of one branch. One entry per
/// branch, the worse of the two helicities.
pub fn correspondence_check(
    p: &MomentumVector,
    params: &PhysicalParams,
    branch: Branch,
) -> Result<CheckReport> {
    let labeled = helicity_eigenstates(p, params, FreeModel::Dirac)?;
    let mut worst = 0.0_f64;
    for state in labeled.states.iter().filter(|s| s.branch == branch) {
        let ex = expectations_of(state);
        let velocity = ex.mean_alpha.map(|a| params.c * a);
        let gamma_inv = ex.mean_beta;
        let rhs = p.dot(velocity) + params.rest_energy() * gamma_inv;
        worst = worst.max((state.energy - rhs).abs() / state.energy.abs());
    }
    let mut report = CheckReport::new();
    report.push(
        format!("correspondence_{}", branch.label()),
        worst,
        EXPECTATION_TOL,
    );
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionRow {
    pub p: f64,
    /// Numeric eigenvalues, ascending.
    pub energies: [f64; 4],
    /// Positive-branch closed form.
    pub closed_form: f64,
    /// Worst relative deviation from `{-s,-s,s,s}`.
    pub residual: f64,
}

/// Spectrum along `p = (0,0,|p|)` for `steps` equally spaced `|p|` in
/// `[0, pmax]`.
pub fn dispersion_table(
    model: FreeModel,
    pmax: f64,
    steps: usize,
    params: &PhysicalParams,
) -> Result<Vec<DispersionRow>> {
    if !(pmax.is_finite() && pmax > 0.0) {
        return Err(Error::rejected(format!(
            "pmax must be positive, got {pmax}"
        )));
    }
    if steps < 2 {
        return Err(Error::rejected(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    (0..steps)
        .map(|i| {
            let pm = pmax * i as f64 / (steps - 1) as f64;
            let p = MomentumVector::along_z(pm);
            let sol = free_spectrum(&p, params, model)?;
            let s = model.closed_form_energy(&p, params);
            let energies = [0, 1, 2, 3].map(|k| sol.eigenvalues[k]);
            Ok(DispersionRow {
                p: pm,
                energies,
                closed_form: s,
                residual: spectrum_residual(&energies, s),
            })
        })
        .collect()
}

/// Normalised copy of a spinor.
pub fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = vec_norm(v);
    v.iter().map(|z| z / n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vec_residual;
    use approx::assert_abs_diff_eq;

    fn natural() -> PhysicalParams {
        PhysicalParams::default()
    }

    fn eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
        hermitian_eig(h).unwrap().eigenvalues
    }

    #[test]
    fn params_validation() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0, -1.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, 1.0, -1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, f64::NAN).is_err());
        assert!(PhysicalParams::new(2.0, 3.0, 0.5, 2.0).is_ok());
    }

    #[test]
    fn dirac_rest_frame() {
        let ev = eigenvalues(&dirac_hamiltonian(&MomentumVector::ZERO, &natural()));
        assert_eq!(ev, vec![-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn dirac_unit_momentum_and_rotation() {
        let s2 = 2f64.sqrt();
        for p in [
            MomentumVector::along_z(1.0),
            MomentumVector::new(0.0, 0.6, 0.8),
        ] {
            let ev = eigenvalues(&dirac_hamiltonian(&p, &natural()));
            for (e, x) in ev.iter().zip([-s2, -s2, s2, s2]) {
                assert_abs_diff_eq!(*e, x, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn linearized_rest_frame_and_unit_momentum() {
        let ev = eigenvalues(&linearized_hamiltonian(&MomentumVector::ZERO, &natural()));
        assert_eq!(ev, vec![-1.0, -1.0, 1.0, 1.0]);
        for p in [
            MomentumVector::along_z(1.0),
            MomentumVector::new(0.0, 0.6, 0.8),
        ] {
            let ev = eigenvalues(&linearized_hamiltonian(&p, &natural()));
            for (e, x) in ev.iter().zip([-1.5, -1.5, 1.5, 1.5]) {
                assert_abs_diff_eq!(*e, x, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn free_spectrum_examples() {
        let sol = free_spectrum(
            &MomentumVector::along_z(2.0),
            &natural(),
            FreeModel::Linearized,
        )
        .unwrap();
        assert!(spectrum_residual(&sol.eigenvalues, 3.0) < 1e-12);
        assert_eq!(
            sol.branches,
            vec![
                Branch::Negative,
                Branch::Negative,
                Branch::Positive,
                Branch::Positive
            ]
        );

        let sol = free_spectrum(&MomentumVector::ZERO, &natural(), FreeModel::Dirac).unwrap();
        assert!(spectrum_residual(&sol.eigenvalues, 1.0) < 1e-12);

        let heavy = PhysicalParams::new(2.0, 1.0, 1.0, -1.0).unwrap();
        let sol =
            free_spectrum(&MomentumVector::along_z(1.0), &heavy, FreeModel::Linearized).unwrap();
        assert!(spectrum_residual(&sol.eigenvalues, 2.25) < 1e-12);
    }

    #[test]
    fn helicity_states_along_z() {
        let labeled = helicity_eigenstates(
            &MomentumVector::along_z(1.0),
            &natural(),
            FreeModel::Linearized,
        )
        .unwrap();
        assert!(!labeled.spin_z_fallback);
        let labels: Vec<_> = labeled
            .states
            .iter()
            .map(|s| (s.branch, s.helicity))
            .collect();
        assert_eq!(
            labels,
            vec![
                (Branch::Positive, 1),
                (Branch::Positive, -1),
                (Branch::Negative, 1),
                (Branch::Negative, -1)
            ]
        );
        assert!(labeled.overlap_residual() < 1e-10);
        let h = linearized_hamiltonian(&MomentumVector::along_z(1.0), &natural());
        let sz = DiracBasis::default().sigma()[2].clone();
        for s in &labeled.states {
            let hv = h.mat_vec(&s.spinor).unwrap();
            let ev: Vec<_> = s.spinor.iter().map(|z| z * s.energy).collect();
            assert!(vec_residual(&hv, &ev) < 1e-9);
            let sv = sz.mat_vec(&s.spinor).unwrap();
            let hel: Vec<_> = s.spinor.iter().map(|z| z * f64::from(s.helicity)).collect();
            assert!(vec_residual(&sv, &hel) < 1e-9);
        }
    }

    #[test]
    fn helicity_falls_back_at_rest() {
        let labeled =
            helicity_eigenstates(&MomentumVector::ZERO, &natural(), FreeModel::Dirac).unwrap();
        assert!(labeled.spin_z_fallback);
        assert_eq!(labeled.states.len(), 4);
    }

    #[test]
    fn expectations_on_positive_branch() {
        let p = MomentumVector::along_z(1.0);
        let r =
            expectation_report(&p, &natural(), FreeModel::Linearized, Branch::Positive, 1).unwrap();
        assert_abs_diff_eq!(r.mean_alpha[2], 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.mean_beta, 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.mean_ibg5, 1.0 / 3.0, epsilon = 1e-12);
        assert!(r
            .identity_check(&p, &natural(), FreeModel::Linearized)
            .overall_pass());
    }

    #[test]
    fn expectations_at_rest_and_negative_branch() {
        let r = expectation_report(
            &MomentumVector::ZERO,
            &natural(),
            FreeModel::Linearized,
            Branch::Positive,
            1,
        )
        .unwrap();
        assert_abs_diff_eq!(r.mean_beta, 1.0, epsilon = 1e-12);
        assert!(r.mean_alpha.iter().all(|a| a.abs() < 1e-12));

        let r = expectation_report(
            &MomentumVector::along_z(1.0),
            &natural(),
            FreeModel::Linearized,
            Branch::Negative,
            -1,
        )
        .unwrap();
        assert_abs_diff_eq!(r.mean_beta, -2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn operator_identities_hold() {
        let r = operator_identity_report(&MomentumVector::new(0.3, -1.2, 2.0), &natural());
        assert!(r.overall_pass(), "{r:?}");
    }

    #[test]
    fn lorentz_examples() {
        let nat = natural();
        let (e, p) = lorentz_transform(1.0, &MomentumVector::ZERO, [0.0; 3], &nat).unwrap();
        assert_eq!((e, p), (1.0, MomentumVector::ZERO));

        let (e, p) = lorentz_transform(1.0, &MomentumVector::ZERO, [0.6, 0.0, 0.0], &nat).unwrap();
        assert_abs_diff_eq!(e, 1.25, epsilon = 1e-14);
        assert_abs_diff_eq!(p.px, 0.75, epsilon = 1e-14);

        let (e, p) = lorentz_transform(-1.0, &MomentumVector::ZERO, [0.6, 0.0, 0.0], &nat).unwrap();
        assert_abs_diff_eq!(e, -1.25, epsilon = 1e-14);
        assert_abs_diff_eq!(p.px, -0.75, epsilon = 1e-14);

        assert!(lorentz_transform(1.0, &MomentumVector::ZERO, [1.0, 0.0, 0.0], &nat).is_err());
        assert!(lorentz_transform(1.0, &MomentumVector::ZERO, [1.5, 0.0, 0.0], &nat).is_err());
    }

    #[test]
    fn correspondence_examples() {
        let nat = natural();
        for branch in [Branch::Positive, Branch::Negative] {
            assert!(correspondence_check(&MomentumVector::ZERO, &nat, branch)
                .unwrap()
                .overall_pass());
            assert!(
                correspondence_check(&MomentumVector::along_z(1.0), &nat, branch)
                    .unwrap()
                    .overall_pass()
            );
        }
        // v·p and m0c²γ⁻¹ are both 1/√2 at p = ẑ
        let labeled =
            helicity_eigenstates(&MomentumVector::along_z(1.0), &nat, FreeModel::Dirac).unwrap();
        let ex = expectations_of(labeled.find(Branch::Positive, 1).unwrap());
        assert_abs_diff_eq!(ex.mean_alpha[2], 1.0 / 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(ex.mean_beta, 1.0 / 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn dispersion_table_rows() {
        let rows = dispersion_table(FreeModel::Linearized, 2.0, 3, &natural()).unwrap();
        let closed: Vec<_> = rows.iter().map(|r| r.closed_form).collect();
        assert_eq!(closed, vec![1.0, 1.5, 3.0]);
        assert!(rows.iter().all(|r| r.residual < 1e-12));
        assert!(dispersion_table(FreeModel::Dirac, 2.0, 1, &natural()).is_err());
        assert!(dispersion_table(FreeModel::Dirac, 0.0, 5, &natural()).is_err());
    }
}
