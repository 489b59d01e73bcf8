use negspin_core::fields::coulomb::grid_convergence;
use negspin_core::fields::landau::{compare_landau_levels, truncated_spectrum, LandauBasis};
use negspin_core::fields::reduction::upper_spinor;
use negspin_core::fields::{
    landau_hamiltonian_matrix, landau_levels_analytic, pauli_reduction_check,
    square_identity_check, RadialGrid, UniformBField,
};
use negspin_core::rng::SeededDraws;
use negspin_core::{MomentumVector, PhysicalParams};
use proptest::prelude::*;

fn nat() -> PhysicalParams {
    PhysicalParams::default()
}

#[test]
fn lowest_landau_level_at_n_max_40() {
    let field = UniformBField::new(1.0).unwrap();
    let basis = LandauBasis::new(40).unwrap();
    let h = landau_hamiltonian_matrix(&field, 0.0, 40, &nat()).unwrap();
    assert!(h.hermiticity_residual() < 1e-12);
    let spec = truncated_spectrum(&h, &basis).unwrap();
    for target in [1.0, -1.0] {
        let lvl = spec.nearest(target).unwrap();
        assert!((lvl.energy - target).abs() < 1e-8, "{lvl:?}");
        assert_eq!(lvl.count, 1);
    }
    assert!(spec.pairing_residual() < 1e-8);
    assert_eq!(spec.edge_states, 8);
}

#[test]
fn ladder_against_analytic_levels() {
    for (b, pz) in [(1.0, 0.0), (2.0, 0.0), (1.0, 1.0), (0.5, -0.3)] {
        let field = UniformBField::new(b).unwrap();
        let cmp = compare_landau_levels(&field, pz, 24, 5, 0.0, &nat()).unwrap();
        for lvl in &cmp.levels {
            assert!(lvl.residual < 1e-8, "b={b} pz={pz}: {lvl:?}");
        }
    }
    let two = landau_levels_analytic(&UniformBField::new(2.0).unwrap(), 0.0, 1, &nat());
    assert_eq!(two.levels[1].energy_plus, 3.0);
}

#[test]
fn weak_field_approaches_free_particle() {
    let b = 1e-3;
    let field = UniformBField::new(b).unwrap();
    let pz = 0.6;
    let cmp = compare_landau_levels(&field, pz, 12, 0, 0.0, &nat()).unwrap();
    let free = 1.0 + pz * pz / 2.0;
    let omega_c = field.cyclotron_frequency(&nat());
    assert!((cmp.levels[0].numeric_plus - free).abs() < omega_c / 2.0);
}

#[test]
fn square_identity_at_n_max_30() {
    let field = UniformBField::new(1.0).unwrap();
    let r = square_identity_check(&field, 0.0, 30, &nat()).unwrap();
    assert!(r.overall_pass(), "{r:?}");
}

#[test]
fn custom_units_scale_the_ladder() {
    let params = PhysicalParams::new(2.0, 3.0, 0.5, -1.5).unwrap();
    let field = UniformBField::new(0.8).unwrap();
    let cmp = compare_landau_levels(&field, 0.4, 16, 3, 0.0, &params).unwrap();
    for lvl in &cmp.levels {
        assert!(lvl.residual < 1e-8 * lvl.analytic_plus.abs(), "{lvl:?}");
    }
    let r = square_identity_check(&field, 0.4, 12, &params).unwrap();
    // residuals are absolute; rescale by the size of H²
    let scale = (params.rest_energy() * 4.0).powi(2);
    assert!(r.get("square_identity_interior").unwrap().residual < 1e-10 * scale);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn landau_matrix_is_hermitian(b in 0.01f64..5.0, pz in -2.0f64..2.0, n_max in 8usize..20) {
        let h = landau_hamiltonian_matrix(&UniformBField::new(b).unwrap(), pz, n_max, &nat()).unwrap();
        prop_assert!(h.hermiticity_residual() < 1e-12);
    }
}

#[test]
fn coulomb_second_order_convergence() {
    let grid = RadialGrid::default();
    for (l, index) in [(0, 0), (0, 1), (1, 0)] {
        let c = grid_convergence(1.0, l, &grid, &nat(), index).unwrap();
        assert!((c.error_ratio - 4.0).abs() < 0.5, "l={l}: {c:?}");
    }
}

#[test]
fn reduction_holds_for_random_draws() {
    let mut draws = SeededDraws::new(0);
    for _ in 0..100 {
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
        let wrong = pauli_reduction_check(&p, v0, e + 0.2, &phi, &nat()).unwrap();
        assert!(!wrong.get("pauli_relation").unwrap().pass);
    }
}

#[test]
fn low_levels_stable_under_larger_truncation() {
    let field = UniformBField::new(1.0).unwrap();
    for pz in [0.0, 0.7] {
        let a = compare_landau_levels(&field, pz, 40, 2, 0.0, &nat()).unwrap();
        let b = compare_landau_levels(&field, pz, 60, 2, 0.0, &nat()).unwrap();
        for (x, y) in a.levels.iter().zip(&b.levels) {
            assert!((x.numeric_plus - y.numeric_plus).abs() < 1e-6);
            assert!((x.numeric_minus - y.numeric_minus).abs() < 1e-6);
        }
    }
}
