//! WebAssembly bindings for the browser demo in `www/`. Every export takes
//! plain numbers and returns a JSON string: the payload on success, or
//! `{"error": "..."}` when the input is rejected.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use negspin_core::clifford::dirac_representation;
use negspin_core::dynamics::{dominant_frequency, observable_series, Superposition};
use negspin_core::fields::landau::compare_landau_levels;
use negspin_core::fields::UniformBField;
use negspin_core::spectral::{dispersion_table, helicity_eigenstates};
use negspin_core::{FreeModel, MomentumVector, PhysicalParams};

fn respond<T: Serialize>(result: negspin_core::Result<T>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v)
            .unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string()),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn model(name: &str) -> negspin_core::Result<FreeModel> {
    match name {
        "bruce" => Ok(FreeModel::Linearized),
        "dirac" => Ok(FreeModel::Dirac),
        other => Err(negspin_core::Error::RejectedInput(format!(
            "unknown model {other:?}"
        ))),
    }
}

/// Rows `{p, energies[4], closed_form, residual}` for `|p|` in `[0, pmax]`.
#[wasm_bindgen]
pub fn dispersion(which: &str, pmax: f64, steps: usize) -> String {
    respond(model(which).and_then(|m| dispersion_table(m, pmax, steps, &PhysicalParams::default())))
}

/// Analytic ladder next to the interior eigenvalues of the truncated
/// magnetic-field Hamiltonian.
#[wasm_bindgen]
pub fn landau_levels(b: f64, pz: f64, n_max: usize, k_max: usize) -> String {
    respond(UniformBField::new(b).and_then(|field| {
        let cmp = compare_landau_levels(&field, pz, n_max, k_max, 0.0, &PhysicalParams::default())?;
        Ok(json!({
            "omega_c": cmp.analytic.omega_c,
            "levels": cmp.levels,
            "eigenvalues": cmp.numeric.eigenvalues,
        }))
    }))
}

/// `⟨α₃⟩(t)` for amplitudes on (+,+1), (+,−1), (−,+1), (−,−1) at
/// `p = (0, 0, pz)`, with the extracted angular frequency (`null` when
/// stationary).
#[wasm_bindgen]
pub fn zitter_series(pz: f64, w_plus: f64, w_minus: f64, t_max: f64, n_samples: usize) -> String {
    let params = PhysicalParams::default();
    let p = MomentumVector::along_z(pz);
    respond((|| {
        let states = helicity_eigenstates(&p, &params, FreeModel::Linearized)?;
        let weights = [w_plus, 0.0, w_minus, 0.0].map(|w| Complex64::new(w, 0.0));
        let sup =
            Superposition::from_weights(&states, &weights, p, FreeModel::Linearized, &params)?;
        let alpha3 = dirac_representation().alpha[2].clone();
        let series = observable_series(&sup, &alpha3, t_max, n_samples, &params)?;
        let estimate = dominant_frequency(&series)?;
        Ok(json!({
            "t": series.iter().map(|s| s.t).collect::<Vec<_>>(),
            "value": series.iter().map(|s| s.value).collect::<Vec<_>>(),
            "omega": estimate.omega(),
            "expected": sup.beat_frequencies(&params),
        }))
    })())
}
