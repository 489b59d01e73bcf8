//! Superpositions of positive- and negative-energy eigenstates at a fixed
//! momentum, their exact time evolution, and the frequency of the
//! resulting oscillation of expectation values (Zitterbewegung).

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{expectation, vec_norm, ComplexMatrix, HERMITIAN_TOL};
use crate::spectral::{hamiltonian, FreeModel, LabeledEigenstates, MomentumVector, PhysicalParams};

pub const NORM_TOL: f64 = 1e-12;
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-9;
pub const MIN_SERIES_SAMPLES: usize = 16;
pub const MIN_FFT_SAMPLES: usize = 64;
/// Peak-to-floor ratio below which a series counts as stationary.
pub const DETECTION_RATIO: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub coefficient: Complex64,
    pub energy: f64,
    pub spinor: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Superposition {
    components: Vec<Component>,
    momentum: MomentumVector,
    model: FreeModel,
}

impl Superposition {
    /// Validates normalisation and that every spinor is an eigenvector of
    /// the `model` Hamiltonian at `momentum` with the stated energy.
    pub fn new(
        components: Vec<Component>,
        momentum: MomentumVector,
        model: FreeModel,
        params: &PhysicalParams,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::rejected(
                "superposition needs at least one component",
            ));
        }
        let h = hamiltonian(model, &momentum, params);
        let mut weight = 0.0;
        for (i, c) in components.iter().enumerate() {
            if c.spinor.len() != h.rows() {
                return Err(Error::rejected(format!(
                    "component {i}: spinor has {} entries, expected {}",
                    c.spinor.len(),
                    h.rows()
                )));
            }
            let hv = h.mat_vec(&c.spinor)?;
            let residual = hv
                .iter()
                .zip(&c.spinor)
                .map(|(a, b)| (a - b * c.energy).norm())
                .fold(0.0, f64::max);
            if !(residual < EIGEN_RESIDUAL_TOL * c.energy.abs().max(1.0)) {
                return Err(Error::rejected(format!(
                    "component {i} is not an eigenstate at E = {} (residual {residual:.3e})",
                    c.energy
                )));
            }
            let n = vec_norm(&c.spinor);
            weight += c.coefficient.norm_sqr() * n * n;
        }
        if !((weight - 1.0).abs() < NORM_TOL) {
            return Err(Error::rejected(format!(
                "superposition weight {weight} is not 1"
            )));
        }
        Ok(Self {
            components,
            momentum,
            model,
        })
    }

    /// Combines labelled eigenstates with amplitudes `weights` (same order
    /// as `states.states`), rescaled to unit norm. Zero amplitudes are
    /// dropped.
    pub fn from_weights(
        states: &LabeledEigenstates,
        weights: &[Complex64],
        momentum: MomentumVector,
        model: FreeModel,
        params: &PhysicalParams,
    ) -> Result<Self> {
        if weights.len() != states.states.len() {
            return Err(Error::rejected(format!(
                "expected {} weights, got {}",
                states.states.len(),
                weights.len()
            )));
        }
        if weights
            .iter()
            .any(|w| !(w.re.is_finite() && w.im.is_finite()))
        {
            return Err(Error::rejected("weights must be finite"));
        }
        let total = vec_norm(weights);
        if total == 0.0 {
            return Err(Error::rejected("at least one weight must be nonzero"));
        }
        let components = states
            .states
            .iter()
            .zip(weights)
            .filter(|(_, w)| w.norm() > 0.0)
            .map(|(s, w)| {
                let n = vec_norm(&s.spinor);
                Component {
                    coefficient: w / total,
                    energy: s.energy,
                    spinor: s.spinor.iter().map(|z| z / n).collect(),
                }
            })
            .collect();
        Self::new(components, momentum, model, params)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn momentum(&self) -> MomentumVector {
        self.momentum
    }

    pub fn model(&self) -> FreeModel {
        self.model
    }

    /// Distinct `|E_a − E_b|/ħ` over component pairs, ascending.
    pub fn beat_frequencies(&self, params: &PhysicalParams) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for (i, a) in self.components.iter().enumerate() {
            for b in &self.components[i + 1..] {
                let w = (a.energy - b.energy).abs() / params.hbar;
                let scale = w.max(1.0);
                if w > 1e-12 * scale && !out.iter().any(|x| (x - w).abs() < 1e-12 * scale) {
                    out.push(w);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

/// `Φ(t) = Σ c_i ψ_i exp(−i E_i t/ħ)`.
pub fn evolve(sup: &Superposition, t: f64, params: &PhysicalParams) -> Vec<Complex64> {
    let dim = sup.components[0].spinor.len();
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for c in &sup.components {
        let phase = Complex64::from_polar(1.0, -c.energy * t / params.hbar);
        let amp = c.coefficient * phase;
        for (o, s) in out.iter_mut().zip(&c.spinor) {
            *o += amp * s;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub value: f64,
}

/// `⟨Φ(t)|O|Φ(t)⟩` at `n_samples` uniform times from 0 to `t_max`
/// inclusive.
pub fn observable_series(
    sup: &Superposition,
    observable: &ComplexMatrix,
    t_max: f64,
    n_samples: usize,
    params: &PhysicalParams,
) -> Result<Vec<TrajectorySample>> {
    let dim = sup.components[0].spinor.len();
    if observable.shape() != (dim, dim) {
        return Err(Error::rejected(format!(
            "observable must be {dim}x{dim}, got {:?}",
            observable.shape()
        )));
    }
    if observable.hermiticity_residual() > HERMITIAN_TOL {
        return Err(Error::rejected("observable is not Hermitian"));
    }
    if n_samples < MIN_SERIES_SAMPLES {
        return Err(Error::rejected(format!(
            "n_samples must be at least {MIN_SERIES_SAMPLES}, got {n_samples}"
        )));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::rejected(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    let dt = t_max / (n_samples - 1) as f64;
    (0..n_samples)
        .map(|i| {
            let t = i as f64 * dt;
            let phi = evolve(sup, t, params);
            let value = expectation(observable, &phi)?;
            if value.im.abs() > 1e-12 * observable.max_abs().max(1.0) {
                return Err(Error::NumericFailure {
                    iterations: i,
                    reason: format!("expectation has imaginary part {:.3e}", value.im),
                });
            }
            Ok(TrajectorySample { t, value: value.re })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrequencyEstimate {
    Oscillation {
        omega: f64,
        peak: f64,
        noise_floor: f64,
    },
    NoOscillation {
        peak: f64,
        noise_floor: f64,
    },
}

impl FrequencyEstimate {
    pub fn omega(&self) -> Option<f64> {
        match *self {
            Self::Oscillation { omega, .. } => Some(omega),
            Self::NoOscillation { .. } => None,
        }
    }
}

fn uniform_step(series: &[TrajectorySample]) -> Result<f64> {
    let span = series[series.len() - 1].t - series[0].t;
    let dt = span / (series.len() - 1) as f64;
    if !(dt > 0.0) || series[0].t < 0.0 {
        return Err(Error::rejected(
            "sample times must be non-negative and increasing",
        ));
    }
    for (i, w) in series.windows(2).enumerate() {
        if !((w[1].t - w[0].t - dt).abs() <= 1e-9 * dt) {
            return Err(Error::rejected(format!(
                "sample times are not uniform at index {}",
                i + 1
            )));
        }
    }
    Ok(dt)
}

/// Angular frequency of the largest nonzero-frequency Fourier peak.
///
/// The series is Hann-windowed after removing its window-weighted mean.
/// The peak bin is refined with a parabola through the logarithms of the
/// three magnitudes around it. The noise floor is the median magnitude,
/// bounded below by a rounding floor.
pub fn dominant_frequency(series: &[TrajectorySample]) -> Result<FrequencyEstimate> {
    let n = series.len();
    if n < MIN_FFT_SAMPLES {
        return Err(Error::rejected(format!(
            "need at least {MIN_FFT_SAMPLES} samples, got {n}"
        )));
    }
    let dt = uniform_step(series)?;
    let window: Vec<f64> = (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos())
        .collect();
    let wsum: f64 = window.iter().sum();
    let mean = series
        .iter()
        .zip(&window)
        .map(|(s, w)| s.value * w)
        .sum::<f64>()
        / wsum;
    let mut buf: Vec<Complex64> = series
        .iter()
        .zip(&window)
        .map(|(s, w)| Complex64::new((s.value - mean) * w, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let half = n / 2;
    let mags: Vec<f64> = buf[..=half].iter().map(|z| z.norm()).collect();
    let (k, &peak) = mags[1..half]
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, m)| (i + 1, m))
        .expect("at least one bin");
    let mut sorted = mags[1..].to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let amplitude = series.iter().map(|s| s.value.abs()).fold(0.0, f64::max);
    let noise_floor = median.max(1e-12 * n as f64 * amplitude.max(1.0));
    if !(peak > DETECTION_RATIO * noise_floor) {
        return Ok(FrequencyEstimate::NoOscillation { peak, noise_floor });
    }

    let ln = |x: f64| x.max(f64::MIN_POSITIVE).ln();
    let (a, b, c) = (ln(mags[k - 1]), ln(mags[k]), ln(mags[k + 1]));
    let denom = a - 2.0 * b + c;
    let delta = if denom < 0.0 {
        0.5 * (a - c) / denom
    } else {
        0.0
    };
    let omega = 2.0 * std::f64::consts::PI * (k as f64 + delta) / (n as f64 * dt);
    Ok(FrequencyEstimate::Oscillation {
        omega,
        peak,
        noise_floor,
    })
}

/// Angular frequency from mean-crossings, linearly interpolated. `None`
/// with fewer than two crossings.
pub fn zero_crossing_frequency(series: &[TrajectorySample]) -> Option<f64> {
    let mean = series.iter().map(|s| s.value).sum::<f64>() / series.len() as f64;
    let crossings: Vec<f64> = series
        .windows(2)
        .filter_map(|w| {
            let (a, b) = (w[0].value - mean, w[1].value - mean);
            (a < 0.0 && b >= 0.0 || a >= 0.0 && b < 0.0)
                .then(|| w[0].t + (w[1].t - w[0].t) * a / (a - b))
        })
        .collect();
    if crossings.len() < 2 {
        return None;
    }
    let span = crossings[crossings.len() - 1] - crossings[0];
    Some(std::f64::consts::PI * (crossings.len() - 1) as f64 / span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::DiracBasis;
    use crate::spectral::helicity_eigenstates;
    use std::f64::consts::PI;

    fn nat() -> PhysicalParams {
        PhysicalParams::default()
    }

    fn mix(p: MomentumVector, weights: [f64; 4]) -> Superposition {
        let states = helicity_eigenstates(&p, &nat(), FreeModel::Linearized).unwrap();
        let w = weights.map(|x| Complex64::new(x, 0.0));
        Superposition::from_weights(&states, &w, p, FreeModel::Linearized, &nat()).unwrap()
    }

    fn synthetic(f: impl Fn(f64) -> f64, t_max: f64, n: usize) -> Vec<TrajectorySample> {
        (0..n)
            .map(|i| {
                let t = t_max * i as f64 / (n - 1) as f64;
                TrajectorySample { t, value: f(t) }
            })
            .collect()
    }

    #[test]
    fn synthetic_cosine() {
        let s = synthetic(|t| (3.0 * t).cos(), 16.0 * PI / 3.0, 256);
        let w = dominant_frequency(&s).unwrap().omega().unwrap();
        assert!((w - 3.0).abs() < 0.03, "{w}");
        let z = zero_crossing_frequency(&s).unwrap();
        assert!((z - 3.0).abs() < 0.03, "{z}");
    }

    #[test]
    fn constant_series_has_no_oscillation() {
        let s = synthetic(|_| 0.7, 10.0, 128);
        assert!(matches!(
            dominant_frequency(&s).unwrap(),
            FrequencyEstimate::NoOscillation { .. }
        ));
        assert!(zero_crossing_frequency(&s).is_none());
    }

    #[test]
    fn rejects_short_or_irregular_series() {
        assert!(dominant_frequency(&synthetic(|t| t.sin(), 10.0, 32)).is_err());
        let mut s = synthetic(|t| t.sin(), 10.0, 128);
        s[5].t += 0.01;
        assert!(dominant_frequency(&s).is_err());
    }

    #[test]
    fn t_zero_is_plain_sum() {
        let sup = mix(MomentumVector::along_z(1.0), [1.0, 0.0, 1.0, 0.0]);
        let phi = evolve(&sup, 0.0, &nat());
        let mut expected = vec![Complex64::new(0.0, 0.0); 4];
        for c in sup.components() {
            for (e, s) in expected.iter_mut().zip(&c.spinor) {
                *e += c.coefficient * s;
            }
        }
        assert_eq!(phi, expected);
    }

    #[test]
    fn norm_is_preserved() {
        let sup = mix(MomentumVector::new(0.3, -0.2, 0.9), [0.5, 1.0, -0.7, 0.2]);
        for t in [0.0, 0.3, 7.1, 120.0] {
            assert!((vec_norm(&evolve(&sup, t, &nat())) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_mix_beta_two_level_formula() {
        // ⟨β⟩(t) = (β₊₊ + β₋₋)/2 + Re(β₊₋ e^{iΩt}) with Ω = 3
        let sup = mix(MomentumVector::along_z(1.0), [1.0, 0.0, 1.0, 0.0]);
        let beta = DiracBasis::default().beta;
        let [a, b] = [&sup.components()[0], &sup.components()[1]];
        let bab = crate::matrix::inner(&a.spinor, &beta.mat_vec(&b.spinor).unwrap());
        let baa = expectation(&beta, &a.spinor).unwrap().re;
        let bbb = expectation(&beta, &b.spinor).unwrap().re;
        let omega = (a.energy - b.energy) / nat().hbar;
        assert!((omega - 3.0).abs() < 1e-12);
        let series = observable_series(&sup, &beta, 4.0 * PI, 200, &nat()).unwrap();
        for s in &series {
            let expected = 0.5 * (baa + bbb) + (bab * Complex64::from_polar(1.0, omega * s.t)).re;
            assert!((s.value - expected).abs() < 1e-12);
        }
        // period 2π/3
        let one = observable_series(&sup, &beta, 2.0 * PI / 3.0, 16, &nat()).unwrap();
        assert!((one[0].value - one[15].value).abs() < 1e-12);
        assert!((one[0].value - one[7].value).abs() > 1e-3);
    }

    #[test]
    fn zitterbewegung_frequency_unit_momentum() {
        let sup = mix(MomentumVector::along_z(1.0), [1.0, 0.0, 1.0, 0.0]);
        let alpha3 = DiracBasis::default().alpha[2].clone();
        let series = observable_series(&sup, &alpha3, 8.0 * PI, 512, &nat()).unwrap();
        let w = dominant_frequency(&series).unwrap().omega().unwrap();
        assert!((w - 3.0).abs() < 0.03, "{w}");
        assert_eq!(sup.beat_frequencies(&nat()), vec![3.0]);
    }

    #[test]
    fn zitterbewegung_small_momentum_limit() {
        let sup = mix(MomentumVector::along_z(0.01), [1.0, 0.0, 1.0, 0.0]);
        let alpha3 = DiracBasis::default().alpha[2].clone();
        let series = observable_series(&sup, &alpha3, 8.0 * PI, 512, &nat()).unwrap();
        let w = dominant_frequency(&series).unwrap().omega().unwrap();
        assert!((w - 2.0).abs() < 0.02, "{w}");
    }

    #[test]
    fn single_state_is_stationary() {
        let p = MomentumVector::along_z(1.0);
        let sup = mix(p, [1.0, 0.0, 0.0, 0.0]);
        let alpha3 = DiracBasis::default().alpha[2].clone();
        let series = observable_series(&sup, &alpha3, 8.0 * PI, 256, &nat()).unwrap();
        let e = sup.components()[0].energy;
        for s in &series {
            assert!((s.value - 1.0 / e).abs() < 1e-12);
        }
        assert!(matches!(
            dominant_frequency(&series).unwrap(),
            FrequencyEstimate::NoOscillation { .. }
        ));
        assert!(sup.beat_frequencies(&nat()).is_empty());
    }

    #[test]
    fn identity_observable_is_one() {
        let sup = mix(MomentumVector::new(0.1, 0.4, -0.3), [1.0, 1.0, 1.0, 1.0]);
        let series = observable_series(&sup, &ComplexMatrix::identity(4), 5.0, 32, &nat()).unwrap();
        assert!(series.iter().all(|s| (s.value - 1.0).abs() < 1e-12));
    }

    #[test]
    fn series_mean_over_whole_periods() {
        let sup = mix(MomentumVector::along_z(1.0), [1.0, 0.0, 1.0, 0.0]);
        let alpha3 = DiracBasis::default().alpha[2].clone();
        // 10 periods, endpoint dropped so the samples tile whole periods
        let series = observable_series(&sup, &alpha3, 20.0 * PI / 3.0, 401, &nat()).unwrap();
        let mean = series[..400].iter().map(|s| s.value).sum::<f64>() / 400.0;
        let stationary: f64 = sup
            .components()
            .iter()
            .map(|c| expectation(&alpha3, &c.spinor).unwrap().re)
            .sum::<f64>()
            / 2.0;
        assert!((mean - stationary).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        let p = MomentumVector::along_z(1.0);
        let states = helicity_eigenstates(&p, &nat(), FreeModel::Linearized).unwrap();
        let zero = [Complex64::new(0.0, 0.0); 4];
        assert!(
            Superposition::from_weights(&states, &zero, p, FreeModel::Linearized, &nat()).is_err()
        );
        assert!(
            Superposition::from_weights(&states, &zero[..3], p, FreeModel::Linearized, &nat())
                .is_err()
        );
        let bad = Component {
            coefficient: Complex64::new(1.0, 0.0),
            energy: 1.5,
            spinor: vec![Complex64::new(1.0, 0.0), zero[0], zero[0], zero[0]],
        };
        assert!(Superposition::new(vec![bad], p, FreeModel::Linearized, &nat()).is_err());

        let sup = mix(p, [1.0, 0.0, 1.0, 0.0]);
        let nh = ComplexMatrix::identity(4).scale(Complex64::new(1.0, 1.0));
        assert!(observable_series(&sup, &nh, 1.0, 32, &nat()).is_err());
        assert!(observable_series(&sup, &ComplexMatrix::identity(4), 1.0, 8, &nat()).is_err());
    }
}
