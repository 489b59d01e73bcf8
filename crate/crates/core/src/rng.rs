//! Seeded draws used by the reduction trials.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`
//! (rand_chacha 0.3). Uniform reals use rand's `Standard` `f64` sampling
//! scaled to the target interval. A complex number uniform on the closed
//! unit disc is drawn by rejection from the square `[-1, 1)²`: draw
//! `(re, im)` until `re² + im² ≤ 1`. Spinors are such draws, normalised.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::vec_norm;

#[derive(Debug, Clone)]
pub struct SeededDraws {
    rng: ChaCha8Rng,
}

impl SeededDraws {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    pub fn unit_disc(&mut self) -> Complex64 {
        loop {
            let re = self.uniform(-1.0, 1.0);
            let im = self.uniform(-1.0, 1.0);
            if re * re + im * im <= 1.0 {
                return Complex64::new(re, im);
            }
        }
    }

    /// Normalised spinor with `n` components drawn from the unit disc.
    pub fn spinor(&mut self, n: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<_> = (0..n).map(|_| self.unit_disc()).collect();
            let norm = vec_norm(&v);
            if norm > 1e-8 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }
}
