//! Dirac-Pauli representation of α, β, γ_μ, γ₅ and the two auxiliary
//! operators Γ₁ = I − iβγ₅ and Γ₂ = (I + iγ₅)β, plus residual checks of
//! every algebraic identity the rest of the crate leans on.
//!
//! Basis ordering is (upper/lower block) ⊗ (spin), so β = σz ⊗ I and
//! αᵢ = σx ⊗ σᵢ.

use num_complex::Complex64;

use crate::matrix::{pauli, residual_norm, smallest_singular_value, ComplexMatrix, I};
use crate::report::CheckReport;

/// Tolerance for every exact operator identity.
pub const IDENTITY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct DiracBasis {
    pub alpha: [ComplexMatrix; 3],
    pub beta: ComplexMatrix,
    /// γ₀..γ₃ with γ₀ = β and γ_k = −iβα_k.
    pub gamma: [ComplexMatrix; 4],
    /// γ₁γ₂γ₃γ₀, computed from the product.
    pub gamma5: ComplexMatrix,
    /// Γ₁ = I − iβγ₅.
    pub gamma1_proj: ComplexMatrix,
    /// Γ₂ = (I + iγ₅)β.
    pub gamma2_op: ComplexMatrix,
}

pub fn dirac_representation() -> DiracBasis {
    let [sx, sy, sz] = pauli();
    let i2 = ComplexMatrix::identity(2);
    let i4 = ComplexMatrix::identity(4);

    let beta = sz.kron(&i2);
    let alpha = [sx.kron(&sx), sx.kron(&sy), sx.kron(&sz)];
    let gamma_k = |k: usize| (&beta * &alpha[k]).scale(-I);
    let gamma = [beta.clone(), gamma_k(0), gamma_k(1), gamma_k(2)];
    let gamma5 = &(&(&gamma[1] * &gamma[2]) * &gamma[3]) * &gamma[0];

    let i_beta_gamma5 = (&beta * &gamma5).scale(I);
    let gamma1_proj = &i4 - &i_beta_gamma5;
    let gamma2_op = &(&i4 + &gamma5.scale(I)) * &beta;

    DiracBasis {
        alpha,
        beta,
        gamma,
        gamma5,
        gamma1_proj,
        gamma2_op,
    }
}

impl Default for DiracBasis {
    fn default() -> Self {
        dirac_representation()
    }
}

impl DiracBasis {
    pub fn identity(&self) -> ComplexMatrix {
        ComplexMatrix::identity(4)
    }

    /// iβγ₅, the operator multiplying the kinetic term.
    pub fn i_beta_gamma5(&self) -> ComplexMatrix {
        (&self.beta * &self.gamma5).scale(I)
    }

    /// Spin operators Σᵢ = I ⊗ σᵢ.
    pub fn sigma(&self) -> [ComplexMatrix; 3] {
        let i2 = ComplexMatrix::identity(2);
        pauli().map(|s| i2.kron(&s))
    }

    /// α·v for a numeric 3-vector.
    pub fn alpha_dot(&self, v: [f64; 3]) -> ComplexMatrix {
        dot(&self.alpha, v)
    }

    /// Σ·v for a numeric 3-vector.
    pub fn sigma_dot(&self, v: [f64; 3]) -> ComplexMatrix {
        dot(&self.sigma(), v)
    }
}

fn dot(ops: &[ComplexMatrix; 3], v: [f64; 3]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(ops[0].rows(), ops[0].cols());
    for (op, &c) in ops.iter().zip(&v) {
        if c != 0.0 {
            out = &out + &op.scale(Complex64::new(c, 0.0));
        }
    }
    out
}

fn res(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    residual_norm(a, b).unwrap_or(f64::INFINITY)
}

/// {αᵢ, αⱼ} = 2δᵢⱼ I, {β, αⱼ} = 0 and β² = I: ten entries.
pub fn verify_clifford_identities(basis: &DiracBasis) -> CheckReport {
    let i4 = ComplexMatrix::identity(4);
    let zero = ComplexMatrix::zeros(4, 4);
    let mut report = CheckReport::new();
    for i in 0..3 {
        for j in i..3 {
            let expected = if i == j {
                i4.scale_real(2.0)
            } else {
                zero.clone()
            };
            let ac = basis.alpha[i].anticommutator(&basis.alpha[j]);
            report.push(
                format!("anticommutator_alpha{}_alpha{}", i + 1, j + 1),
                res(&ac, &expected),
                IDENTITY_TOL,
            );
        }
    }
    for j in 0..3 {
        let ac = basis.beta.anticommutator(&basis.alpha[j]);
        report.push(
            format!("anticommutator_beta_alpha{}", j + 1),
            res(&ac, &zero),
            IDENTITY_TOL,
        );
    }
    report.push(
        "beta_squared_identity",
        res(&(&basis.beta * &basis.beta), &i4),
        IDENTITY_TOL,
    );
    report
}

/// Γ₁/Γ₂ algebra used to linearise the wave equation and to rotate the
/// bispinor, plus singularity of Γ₁ and unitarity of Γ₂/√2.
pub fn verify_gamma_properties(basis: &DiracBasis) -> CheckReport {
    let i4 = ComplexMatrix::identity(4);
    let zero = ComplexMatrix::zeros(4, 4);
    let g1 = &basis.gamma1_proj;
    let g2 = &basis.gamma2_op;
    let i_g5 = basis.gamma5.scale(I);
    let i_plus_beta = &i4 + &basis.beta;
    let mut report = CheckReport::new();

    report.push(
        "gamma1_squared_is_2_gamma1",
        res(&(g1 * g1), &g1.scale_real(2.0)),
        IDENTITY_TOL,
    );
    report.push(
        "gamma2_squared_is_2",
        res(&(g2 * g2), &i4.scale_real(2.0)),
        IDENTITY_TOL,
    );
    report.push(
        "gamma2_gamma1_factorisation",
        res(&(g2 * g1), &(&i_plus_beta * &(&i4 - &i_g5))),
        IDENTITY_TOL,
    );
    for (k, axis) in ["x", "y", "z"].iter().enumerate() {
        let mut n = [0.0; 3];
        n[k] = 1.0;
        let ac = basis.alpha_dot(n).anticommutator(g2);
        report.push(
            format!("anticommutator_alpha_{axis}_gamma2"),
            res(&ac, &zero),
            IDENTITY_TOL,
        );
    }
    report.push(
        "half_product_i_plus_minus_igamma5",
        res(&(&(&i4 + &i_g5) * &(&i4 - &i_g5)).scale_real(0.5), &i4),
        IDENTITY_TOL,
    );
    report.push(
        "gamma2_beta",
        res(&(g2 * &basis.beta), &(&i4 + &i_g5)),
        IDENTITY_TOL,
    );
    report.push(
        "one_plus_beta_times_beta",
        res(&(&i_plus_beta * &basis.beta), &i_plus_beta),
        IDENTITY_TOL,
    );
    let smin = smallest_singular_value(g1).unwrap_or(f64::INFINITY);
    report.push("gamma1_smallest_singular_value", smin, IDENTITY_TOL);
    report.push(
        "gamma2_unitarity",
        res(&(&g2.adjoint() * g2).scale_real(0.5), &i4),
        IDENTITY_TOL,
    );
    report
}

/// Definitions and Hermiticity of the γ's, Γ's, and the γ₅ (anti)commutation
/// rules the expectation-value identities rely on.
pub fn verify_basis_structure(basis: &DiracBasis) -> CheckReport {
    let zero = ComplexMatrix::zeros(4, 4);
    let mut report = CheckReport::new();
    report.push(
        "gamma0_is_beta",
        res(&basis.gamma[0], &basis.beta),
        IDENTITY_TOL,
    );
    for k in 0..3 {
        let expected = (&basis.beta * &basis.alpha[k]).scale(-I);
        report.push(
            format!("gamma{}_definition", k + 1),
            res(&basis.gamma[k + 1], &expected),
            IDENTITY_TOL,
        );
    }
    for (mu, g) in basis.gamma.iter().enumerate() {
        report.push(
            format!("gamma{mu}_hermitian"),
            g.hermiticity_residual(),
            IDENTITY_TOL,
        );
    }
    report.push(
        "gamma5_hermitian",
        basis.gamma5.hermiticity_residual(),
        IDENTITY_TOL,
    );
    report.push(
        "gamma1_op_hermitian",
        basis.gamma1_proj.hermiticity_residual(),
        IDENTITY_TOL,
    );
    report.push(
        "gamma2_op_hermitian",
        basis.gamma2_op.hermiticity_residual(),
        IDENTITY_TOL,
    );
    report.push(
        "i_beta_gamma5_hermitian",
        basis.i_beta_gamma5().hermiticity_residual(),
        IDENTITY_TOL,
    );
    report.push(
        "anticommutator_gamma5_beta",
        res(&basis.gamma5.anticommutator(&basis.beta), &zero),
        IDENTITY_TOL,
    );
    for k in 0..3 {
        report.push(
            format!("commutator_gamma5_alpha{}", k + 1),
            res(&basis.gamma5.commutator(&basis.alpha[k]), &zero),
            IDENTITY_TOL,
        );
    }
    report
}
