use num_complex::Complex64;
use serde_json::{json, Value};

use negspin_core::clifford::{
    dirac_representation, verify_basis_structure, verify_clifford_identities,
    verify_gamma_properties,
};
use negspin_core::dynamics::{
    dominant_frequency, evolve, observable_series, FrequencyEstimate, Superposition,
    DETECTION_RATIO, MIN_FFT_SAMPLES,
};
use negspin_core::fields::coulomb::{coulomb_radial_spectrum, RadialGrid};
use negspin_core::fields::landau::compare_landau_levels;
use negspin_core::fields::reduction::upper_spinor;
use negspin_core::fields::{
    bohr_level, pauli_reduction_check, square_identity_check, UniformBField,
};
use negspin_core::matrix::vec_norm;
use negspin_core::rng::SeededDraws;
use negspin_core::spectral::{
    correspondence_check, dispersion_table, helicity_eigenstates, lorentz_transform,
    operator_identity_report, rel_err,
};
use negspin_core::{Branch, CheckReport, ComplexMatrix, FreeModel, MomentumVector, PhysicalParams};

use crate::args::{
    parse_list, parse_vec3, CommonArgs, CoulombArgs, DispersionArgs, IdentitiesArgs, LandauArgs,
    LorentzArgs, Observable, ReductionArgs, ZitterArgs,
};
use crate::output::{Cell, Table};
use crate::CliError;

/// What a command produced, before formatting.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub results: Value,
    pub checks: CheckReport,
    /// Emitted for `--format csv`.
    pub table: Table,
    /// Extra `(path, contents)` files requested by the command.
    pub files: Vec<(std::path::PathBuf, String)>,
}

impl Outcome {
    fn checks_only(results: Value, checks: CheckReport) -> Self {
        let table = Table::from_checks(&checks);
        Self {
            results,
            checks,
            table,
            files: Vec::new(),
        }
    }
}

/// Keeps, per check name, the entry with the largest residual.
fn merge_worst(into: &mut Vec<negspin_core::CheckEntry>, report: CheckReport) {
    for e in report.entries {
        match into.iter_mut().find(|x| x.name == e.name) {
            Some(x) if !(e.residual <= x.residual) => *x = e,
            Some(_) => {}
            None => into.push(e),
        }
    }
}

pub fn identities(_: &IdentitiesArgs) -> Result<Outcome, CliError> {
    let basis = dirac_representation();
    let mut checks = verify_clifford_identities(&basis);
    checks.extend(verify_gamma_properties(&basis));
    checks.extend(verify_basis_structure(&basis));
    let results = json!({ "count": checks.len() });
    Ok(Outcome::checks_only(results, checks))
}

pub fn dispersion(args: &DispersionArgs, params: &PhysicalParams) -> Result<Outcome, CliError> {
    let model = FreeModel::from(args.which);
    let rows = dispersion_table(model, args.pmax, args.steps, params)?;
    let mut table = Table::new(vec!["p", "E1", "E2", "E3", "E4", "E_closed", "residual"]);
    for r in &rows {
        let mut row: Vec<Cell> = vec![r.p.into()];
        row.extend(r.energies.iter().map(|&e| Cell::from(e)));
        row.extend([r.closed_form.into(), r.residual.into()]);
        table.push(row);
    }
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let mut checks = CheckReport::new();
    checks.push("spectrum_vs_closed_form", worst, 1e-12);
    if model == FreeModel::Linearized {
        let mut entries = Vec::new();
        for r in &rows {
            merge_worst(
                &mut entries,
                operator_identity_report(&MomentumVector::along_z(r.p), params),
            );
        }
        checks.entries.extend(entries);
    }
    Ok(Outcome {
        results: json!({ "model": model, "rows": rows }),
        checks,
        table,
        files: Vec::new(),
    })
}

pub fn landau(args: &LandauArgs, params: &PhysicalParams) -> Result<Outcome, CliError> {
    let field = UniformBField::new(args.b)?;
    let cmp = compare_landau_levels(&field, args.pz, args.n_max, args.k_max, args.v0, params)?;
    let mut table = Table::new(vec![
        "k_or_n",
        "E_plus",
        "E_minus",
        "multiplicity",
        "E_plus_numeric",
        "E_minus_numeric",
        "residual",
    ]);
    let mut checks = CheckReport::new();
    for lvl in &cmp.levels {
        table.push(vec![
            lvl.k.into(),
            lvl.analytic_plus.into(),
            lvl.analytic_minus.into(),
            lvl.multiplicity.into(),
            lvl.numeric_plus.into(),
            lvl.numeric_minus.into(),
            lvl.residual.into(),
        ]);
        checks.push(format!("level_k{}", lvl.k), lvl.residual, 1e-6);
    }
    // pairing is about the operator, so measure it without the shift
    let unshifted = if args.v0 == 0.0 {
        cmp.numeric.clone()
    } else {
        compare_landau_levels(&field, args.pz, args.n_max, args.k_max, 0.0, params)?.numeric
    };
    checks.push("plus_minus_pairing", unshifted.pairing_residual(), 1e-8);
    checks.extend(square_identity_check(&field, args.pz, args.n_max, params)?);
    let results = json!({
        "omega_c": cmp.analytic.omega_c,
        "edge_states": cmp.numeric.edge_states,
        "interior_levels": cmp.numeric.interior.len(),
        "levels": cmp.levels,
    });
    Ok(Outcome {
        results,
        checks,
        table,
        files: Vec::new(),
    })
}

pub fn coulomb(args: &CoulombArgs, params: &PhysicalParams) -> Result<Outcome, CliError> {
    let grid = RadialGrid::new(args.r_max, args.n_points)?;
    let coarse = coulomb_radial_spectrum(args.z, args.l, &grid, params, args.n_levels)?;
    let fine = coulomb_radial_spectrum(args.z, args.l, &grid.refined(), params, args.n_levels)?;
    let mut table = Table::new(vec![
        "k_or_n",
        "E_plus",
        "E_minus",
        "multiplicity",
        "E_bohr",
        "rel_error",
        "error_ratio",
    ]);
    // (m, spin) states sharing one radial level
    let multiplicity = 2 * (2 * args.l + 1);
    let mut checks = CheckReport::new();
    let mut levels = Vec::new();
    for (i, (&e, &f)) in coarse
        .energies_plus
        .iter()
        .zip(&fine.energies_plus)
        .enumerate()
    {
        let n = i + args.l + 1;
        let exact = bohr_level(args.z, n, params);
        let err = rel_err(e, exact);
        let ratio = (e - exact) / (f - exact);
        table.push(vec![
            n.into(),
            e.into(),
            coarse.energies_minus[i].into(),
            multiplicity.into(),
            exact.into(),
            err.into(),
            ratio.into(),
        ]);
        checks.push(format!("level_n{n}_rel_error"), err, 1e-3);
        checks.push(
            format!("level_n{n}_convergence_ratio"),
            (ratio - 4.0).abs(),
            0.5,
        );
        levels.push(json!({
            "n": n,
            "energy_plus": e,
            "energy_minus": coarse.energies_minus[i],
            "energy_refined": f,
            "multiplicity": multiplicity,
            "bohr": exact,
            "rel_error": err,
            "error_ratio": ratio,
        }));
    }
    let results = json!({ "spacing": grid.spacing(), "levels": levels });
    Ok(Outcome {
        results,
        checks,
        table,
        files: Vec::new(),
    })
}

fn observable_matrix(o: Observable) -> ComplexMatrix {
    let basis = dirac_representation();
    match o {
        Observable::Alpha1 => basis.alpha[0].clone(),
        Observable::Alpha2 => basis.alpha[1].clone(),
        Observable::Alpha3 => basis.alpha[2].clone(),
        Observable::Beta => basis.beta.clone(),
        Observable::Ibg5 => basis.i_beta_gamma5(),
        Observable::Identity => basis.identity(),
    }
}

pub fn zitter(args: &ZitterArgs, params: &PhysicalParams) -> Result<Outcome, CliError> {
    let p = MomentumVector::from_array(parse_vec3("p", &args.p)?);
    let weights: Vec<Complex64> = parse_list("weights", &args.weights)?
        .into_iter()
        .map(|w| Complex64::new(w, 0.0))
        .collect();
    if args.n_samples < MIN_FFT_SAMPLES {
        return Err(CliError::Usage(format!(
            "--n-samples must be at least {MIN_FFT_SAMPLES} for frequency extraction"
        )));
    }
    let model = FreeModel::from(args.model);
    let states = helicity_eigenstates(&p, params, model)?;
    let sup = Superposition::from_weights(&states, &weights, p, model, params)?;
    let series = observable_series(
        &sup,
        &observable_matrix(args.observable),
        args.t_max,
        args.n_samples,
        params,
    )?;
    let estimate = dominant_frequency(&series)?;
    let beats = sup.beat_frequencies(params);

    let mut checks = CheckReport::new();
    let norm_drift = series
        .iter()
        .map(|s| (vec_norm(&evolve(&sup, s.t, params)) - 1.0).abs())
        .fold(0.0, f64::max);
    checks.push("norm_conservation", norm_drift, 1e-12);

    let mut expected = Value::Null;
    let mut rel_error = Value::Null;
    if beats.is_empty() {
        let v0 = series[0].value;
        let drift = series
            .iter()
            .map(|s| (s.value - v0).abs())
            .fold(0.0, f64::max);
        checks.push("stationary_series", drift, 1e-10);
    } else {
        let (peak, floor) = match estimate {
            FrequencyEstimate::Oscillation {
                peak, noise_floor, ..
            }
            | FrequencyEstimate::NoOscillation { peak, noise_floor } => (peak, noise_floor),
        };
        checks.push("oscillation_detected", DETECTION_RATIO * floor / peak, 1.0);
        if let Some(w) = estimate.omega() {
            let nearest = beats
                .iter()
                .copied()
                .min_by(|a, b| (a - w).abs().total_cmp(&(b - w).abs()))
                .expect("nonempty");
            let err = (w - nearest).abs() / nearest;
            checks.push("frequency_rel_error", err, 0.01);
            expected = json!(nearest);
            rel_error = json!(err);
        }
    }

    let measured = match estimate.omega() {
        Some(w) => json!(w),
        None => json!("no oscillation"),
    };
    let energies: Vec<f64> = sup.components().iter().map(|c| c.energy).collect();
    let mut table = Table::new(vec!["t", "value"]);
    for s in &series {
        table.push(vec![s.t.into(), s.value.into()]);
    }
    let files = match &args.series {
        Some(path) => vec![(path.clone(), table.to_csv()?)],
        None => Vec::new(),
    };
    let results = json!({
        "energies": energies,
        "beat_frequencies": beats,
        "measured_frequency": measured,
        "expected_frequency": expected,
        "rel_error": rel_error,
        "estimate": estimate,
        "spin_z_labels": states.spin_z_fallback,
        "series": series,
    });
    Ok(Outcome {
        results,
        checks,
        table,
        files,
    })
}

pub fn lorentz(args: &LorentzArgs, params: &PhysicalParams) -> Result<Outcome, CliError> {
    let v = parse_vec3("v", &args.v)?;
    let p_prime = MomentumVector::from_array(parse_vec3("p-prime", &args.p_prime)?);
    let e_prime = args
        .e_prime
        .unwrap_or_else(|| params.dirac_energy(p_prime.norm_sq()));
    if args.sweep == 0 {
        return Err(CliError::Usage("--sweep must be at least 1".into()));
    }
    if !(args.sweep_pmax.is_finite() && args.sweep_pmax >= 0.0) {
        return Err(CliError::Usage("--sweep-pmax must be non-negative".into()));
    }
    let (e, p) = lorentz_transform(e_prime, &p_prime, v, params)?;
    let (e_back, p_back) = lorentz_transform(e, &p, v.map(|x| -x), params)?;

    let c2 = params.c * params.c;
    let scale = e_prime
        .abs()
        .max(p_prime.norm() * params.c)
        .max(1.0)
        .powi(2);
    let mut checks = CheckReport::new();
    let invariant = |e: f64, p: &MomentumVector| e * e - p.norm_sq() * c2;
    checks.push(
        "invariant_mass",
        (invariant(e, &p) - invariant(e_prime, &p_prime)).abs() / scale,
        1e-12,
    );
    let back = [
        e_back - e_prime,
        p_back.px - p_prime.px,
        p_back.py - p_prime.py,
        p_back.pz - p_prime.pz,
    ]
    .iter()
    .map(|d| d.abs())
    .fold(0.0, f64::max);
    checks.push("inverse_roundtrip", back / scale.sqrt(), 1e-12);

    let direction = [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0];
    let mut sweep = Vec::new();
    for k in 0..args.sweep {
        let t = if args.sweep == 1 {
            0.0
        } else {
            args.sweep_pmax * k as f64 / (args.sweep - 1) as f64
        };
        let pk = MomentumVector::from_array(direction.map(|d| d * t));
        for branch in [Branch::Positive, Branch::Negative] {
            for mut entry in correspondence_check(&pk, params, branch)?.entries {
                entry.name = format!("p{k}_{}", entry.name);
                sweep.push(json!({ "p": t, "branch": branch, "residual": entry.residual }));
                checks.entries.push(entry);
            }
        }
    }
    let results = json!({
        "e_prime": e_prime,
        "p_prime": p_prime.as_array(),
        "e": e,
        "p": p.as_array(),
        "sweep_direction": direction,
        "sweep": sweep,
    });
    Ok(Outcome::checks_only(results, checks))
}

pub fn reduction(
    args: &ReductionArgs,
    common: &CommonArgs,
    params: &PhysicalParams,
) -> Result<Outcome, CliError> {
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let offset = if args.wrong_energy { 0.2 } else { 0.0 };
    let mut draws = SeededDraws::new(common.seed);
    let mut worst = Vec::new();
    let mut failing = Vec::new();
    for trial in 0..args.trials {
        let p = MomentumVector::new(
            draws.uniform(-2.0, 2.0),
            draws.uniform(-2.0, 2.0),
            draws.uniform(-2.0, 2.0),
        );
        let v0 = draws.uniform(-1.0, 1.0);
        let phi = upper_spinor(&draws.spinor(2))?;
        let e_trial = params.nonrel_energy(p.norm_sq()) + v0 + offset;
        let report = pauli_reduction_check(&p, v0, e_trial, &phi, params)?;
        if !report.overall_pass() {
            failing.push(trial);
        }
        merge_worst(&mut worst, report);
    }
    let checks = CheckReport { entries: worst };
    let results = json!({
        "trials": args.trials,
        "trial_energy_offset": offset,
        "failing_trials": failing,
    });
    Ok(Outcome::checks_only(results, checks))
}
