//! Momentum-space check of the reduction from the bispinor equation to
//! the two-component Pauli equation, with a constant potential energy
//! `v0` and the momentum operator replaced by a numeric vector `p`.
//!
//! The chain, with `ε = E − v0`:
//!
//! 1. The eigenproblem `H Φ = ε Φ` of the free Hamiltonian is rearranged
//!    into the linear equation `ε Γ₁ Φ = (cα·p + m₀c² Γ₂) Φ`. This holds on
//!    the positive branch. On the negative branch the kinetic term is
//!    `−ε − m₀c²`, and the same rearrangement yields the complementary
//!    projector: `ε (I + iβγ₅) Φ = (cα·p + m₀c² Γ₂) Φ`.
//! 2. Left multiplication by Γ₂ and `Ψ = Γ₂ Φ` give
//!    `ε (I + β) Ψ = (−cα·p + m₀c² Γ₂) Ψ`, because
//!    `Γ₂ M₁(ε) = M₂(ε) Γ₂` for the two operator pencils.
//! 3. With `Ψ = (φ, χ)` the lower row fixes
//!    `χ = −(i m₀c² + cσ·p) φ / (m₀c²)` and the upper row collapses to
//!    `2 (ε − m₀c² − (σ·p)²/2m₀) φ = 0`.
//!
//! The lower and upper rows are read off the 4×4 operator of step 2, not
//! hard-coded.

use num_complex::Complex64;

use crate::clifford::DiracBasis;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eig, pauli, residual_norm, vec_norm, ComplexMatrix, I};
use crate::report::CheckReport;
use crate::spectral::{linearized_hamiltonian, MomentumVector, PhysicalParams};

/// Exact matrix identities of the chain.
pub const CHAIN_TOL: f64 = 1e-12;
/// The recovered Pauli relation at the trial energy.
pub const PAULI_TOL: f64 = 1e-10;

/// `ε Γ₁ − cα·p − m₀c² Γ₂`; `projector` selects Γ₁ or `I + iβγ₅`.
fn linear_pencil(
    eps: f64,
    projector: &ComplexMatrix,
    a_p: &ComplexMatrix,
    basis: &DiracBasis,
    params: &PhysicalParams,
) -> ComplexMatrix {
    let rhs = &a_p.scale_real(params.c) + &basis.gamma2_op.scale_real(params.rest_energy());
    &projector.scale_real(eps) - &rhs
}

/// `ε (I + β) + cα·p − m₀c² Γ₂`.
fn rotated_pencil(
    eps: f64,
    a_p: &ComplexMatrix,
    basis: &DiracBasis,
    params: &PhysicalParams,
) -> ComplexMatrix {
    let i_plus_beta = &basis.identity() + &basis.beta;
    let lhs = &i_plus_beta.scale_real(eps) + &a_p.scale_real(params.c);
    &lhs - &basis.gamma2_op.scale_real(params.rest_energy())
}

/// Lower spinor from the upper one: `χ = −(i m₀c² + cσ·p) φ / (m₀c²)`.
pub fn lower_spinor(
    phi: &[Complex64; 2],
    p: &MomentumVector,
    params: &PhysicalParams,
) -> [Complex64; 2] {
    let s_p = sigma_dot(p);
    let mc2 = params.rest_energy();
    let op = &ComplexMatrix::identity(2).scale(I * mc2) + &s_p.scale_real(params.c);
    let v = op.mat_vec(phi).expect("2x2 operator");
    [v[0], v[1]].map(|z| -z / mc2)
}

fn sigma_dot(p: &MomentumVector) -> ComplexMatrix {
    let [sx, sy, sz] = pauli();
    let v = p.as_array();
    &(&sx.scale_real(v[0]) + &sy.scale_real(v[1])) + &sz.scale_real(v[2])
}

fn cat(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().chain(b).copied().collect()
}

/// Runs the whole chain for one `(p, v0, φ)` at trial energy `e_trial`.
///
/// Entries:
/// * `rearrangement_identity`: step 1 as a matrix identity, both branches.
/// * `linear_equation_positive_branch`, `linear_equation_negative_branch`:
///   step 1 on eigenvectors of the free Hamiltonian.
/// * `gamma2_intertwining`: `Γ₂ M₁(ε) = M₂(ε) Γ₂` at the trial energy.
/// * `rotated_bispinor_equation`: step 2 on `Γ₂ Φ₊`.
/// * `lower_row_elimination`: lower row of step 2 with `χ` from `φ`.
/// * `upper_row_is_pauli_operator`: upper row equals
///   `2 (ε − m₀c² − (σ·p)²/2m₀) φ`.
/// * `pauli_relation`: `‖(ε − m₀c² − (σ·p)²/2m₀) φ‖ / ‖φ‖`, zero only at
///   the positive-branch energy.
pub fn pauli_reduction_check(
    p: &MomentumVector,
    v0: f64,
    e_trial: f64,
    phi: &[Complex64; 2],
    params: &PhysicalParams,
) -> Result<CheckReport> {
    if !(p.is_finite() && v0.is_finite() && e_trial.is_finite()) {
        return Err(Error::rejected(
            "momentum, v0 and trial energy must be finite",
        ));
    }
    let phi_norm = vec_norm(phi);
    if phi_norm == 0.0 {
        return Err(Error::rejected("upper spinor must be nonzero"));
    }
    let basis = DiracBasis::default();
    let a_p = basis.alpha_dot(p.as_array());
    let ibg5 = basis.i_beta_gamma5();
    let gamma1_complement = &basis.identity() + &ibg5;
    let mc2 = params.rest_energy();
    let s = params.nonrel_energy(p.norm_sq());
    let scale = s.abs().max(1.0) * (1.0 + p.norm());
    let mut report = CheckReport::new();

    // step 1
    let h = linearized_hamiltonian(p, params);
    let eig = hermitian_eig(&h)?;
    let mut rearrangement = 0.0_f64;
    for eps in [s, -s] {
        let substituted = &(&a_p.scale_real(params.c) + &basis.beta.scale_real(mc2))
            + &ibg5.scale_real(eps - mc2);
        let rearranged = &basis.identity().scale_real(eps) - &substituted;
        let pencil = linear_pencil(eps, &basis.gamma1_proj, &a_p, &basis, params);
        rearrangement = rearrangement.max(residual_norm(&pencil, &rearranged)?);
    }
    report.push("rearrangement_identity", rearrangement / scale, CHAIN_TOL);

    let mut positive = 0.0_f64;
    let mut negative = 0.0_f64;
    let mut rotated = 0.0_f64;
    let pos_pencil = linear_pencil(s, &basis.gamma1_proj, &a_p, &basis, params);
    let neg_pencil = linear_pencil(-s, &gamma1_complement, &a_p, &basis, params);
    let rot_pencil = rotated_pencil(s, &a_p, &basis, params);
    for (k, &energy) in eig.eigenvalues.iter().enumerate() {
        let phi_full = eig.vector(k);
        if energy > 0.0 {
            positive = positive.max(vec_norm(&pos_pencil.mat_vec(&phi_full)?));
            let psi = basis.gamma2_op.mat_vec(&phi_full)?;
            rotated = rotated.max(vec_norm(&rot_pencil.mat_vec(&psi)?));
        } else {
            negative = negative.max(vec_norm(&neg_pencil.mat_vec(&phi_full)?));
        }
    }
    report.push(
        "linear_equation_positive_branch",
        positive / scale,
        CHAIN_TOL,
    );
    report.push(
        "linear_equation_negative_branch",
        negative / scale,
        CHAIN_TOL,
    );

    // step 2
    let eps = e_trial - v0;
    let m1 = linear_pencil(eps, &basis.gamma1_proj, &a_p, &basis, params);
    let m2 = rotated_pencil(eps, &a_p, &basis, params);
    let intertwining = residual_norm(&(&basis.gamma2_op * &m1), &(&m2 * &basis.gamma2_op))?;
    report.push("gamma2_intertwining", intertwining / scale, CHAIN_TOL);
    report.push("rotated_bispinor_equation", rotated / scale, CHAIN_TOL);

    // step 3
    let chi = lower_spinor(phi, p, params);
    let psi = cat(phi, &chi);
    let rows = m2.mat_vec(&psi)?;
    let (upper, lower) = rows.split_at(2);
    report.push(
        "lower_row_elimination",
        vec_norm(lower) / (scale * phi_norm),
        CHAIN_TOL,
    );

    let s_p = sigma_dot(p);
    let pauli_op = &ComplexMatrix::identity(2).scale_real(eps - mc2)
        - &(&s_p * &s_p).scale_real(0.5 / params.m0);
    let pauli_phi = pauli_op.mat_vec(phi)?;
    let half_upper: Vec<_> = upper.iter().map(|z| z * 0.5).collect();
    let consistency = half_upper
        .iter()
        .zip(&pauli_phi)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    report.push(
        "upper_row_is_pauli_operator",
        consistency / (scale * phi_norm),
        CHAIN_TOL,
    );
    report.push(
        "pauli_relation",
        vec_norm(&half_upper) / phi_norm,
        PAULI_TOL,
    );
    Ok(report)
}

/// Upper spinor as a fixed-size array, rejecting other lengths.
pub fn upper_spinor(v: &[Complex64]) -> Result<[Complex64; 2]> {
    match v {
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::rejected(format!(
            "upper spinor needs 2 components, got {}",
            v.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededDraws;

    fn nat() -> PhysicalParams {
        PhysicalParams::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_momentum_passes() {
        let phi = [c(0.6, 0.0), c(0.0, 0.8)];
        let r =
            pauli_reduction_check(&MomentumVector::along_z(1.0), 0.0, 1.5, &phi, &nat()).unwrap();
        assert!(r.overall_pass(), "{r:?}");
    }

    #[test]
    fn rest_frame_lower_spinor() {
        let phi = [c(1.0, 0.0), c(0.0, 0.0)];
        let chi = lower_spinor(&phi, &MomentumVector::ZERO, &nat());
        assert_eq!(chi, [c(0.0, -1.0), c(0.0, 0.0)]);
        let r = pauli_reduction_check(&MomentumVector::ZERO, 0.0, 1.0, &phi, &nat()).unwrap();
        assert_eq!(r.get("lower_row_elimination").unwrap().residual, 0.0);
        assert!(r.overall_pass());
    }

    #[test]
    fn wrong_energy_is_detected() {
        let phi = [c(0.6, 0.0), c(0.0, 0.8)];
        let r =
            pauli_reduction_check(&MomentumVector::along_z(1.0), 0.0, 1.7, &phi, &nat()).unwrap();
        assert!(!r.overall_pass());
        let pauli = r.get("pauli_relation").unwrap();
        assert!((pauli.residual - 0.2).abs() < 1e-12);
        // the chain identities themselves still hold
        assert!(r.get("lower_row_elimination").unwrap().pass);
        assert!(r.get("gamma2_intertwining").unwrap().pass);
    }

    #[test]
    fn constant_potential_shifts_the_energy() {
        let phi = [c(1.0, 0.0), c(0.0, 0.0)];
        let p = MomentumVector::new(0.3, -0.4, 1.2);
        let e = nat().nonrel_energy(p.norm_sq()) + 0.7;
        assert!(pauli_reduction_check(&p, 0.7, e, &phi, &nat())
            .unwrap()
            .overall_pass());
    }

    #[test]
    fn random_draws_pass() {
        let mut draws = SeededDraws::new(11);
        for _ in 0..20 {
            let p = MomentumVector::new(
                draws.uniform(-2.0, 2.0),
                draws.uniform(-2.0, 2.0),
                draws.uniform(-2.0, 2.0),
            );
            let v0 = draws.uniform(-1.0, 1.0);
            let phi = upper_spinor(&draws.spinor(2)).unwrap();
            let e = nat().nonrel_energy(p.norm_sq()) + v0;
            let r = pauli_reduction_check(&p, v0, e, &phi, &nat()).unwrap();
            assert!(r.overall_pass(), "{r:?}");
        }
    }

    #[test]
    fn linear_equation_has_no_negative_solution_with_gamma1() {
        // the Γ₁ form of the linear equation only admits the positive branch
        let basis = DiracBasis::default();
        let p = MomentumVector::along_z(1.0);
        let a_p = basis.alpha_dot(p.as_array());
        let pencil = linear_pencil(-1.5, &basis.gamma1_proj, &a_p, &basis, &nat());
        let smin = crate::matrix::smallest_singular_value(&pencil).unwrap();
        assert!(smin > 0.1);
    }
}
