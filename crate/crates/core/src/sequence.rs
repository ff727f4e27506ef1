//! Low-discrepancy points for reproducible multi-start searches.
//!
//! Uses the additive recurrence `u_k = frac(shift + k * alpha)` with
//! `alpha_j = phi_d^{-(j+1)}`, `phi_d` the unique positive root of
//! `x^{d+1} = x + 1`. The shift is drawn from a seeded ChaCha stream, so a
//! seed fully determines the sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Rd {
    alpha: Vec<f64>,
    shift: Vec<f64>,
}

impl Rd {
    pub fn new(dim: usize, seed: u64) -> Self {
        let mut phi = 2.0f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
        }
        let alpha = (1..=dim).map(|j| phi.powi(-(j as i32)).fract()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = (0..dim).map(|_| rng.random::<f64>()).collect();
        Rd { alpha, shift }
    }

    /// `k`-th point of the unit cube.
    pub fn unit(&self, k: usize) -> Vec<f64> {
        self.alpha
            .iter()
            .zip(&self.shift)
            .map(|(a, s)| (s + (k as f64 + 1.0) * a).fract())
            .collect()
    }

    /// `k`-th point of `[-r, r]^d`.
    pub fn in_box(&self, k: usize, r: f64) -> Vec<f64> {
        self.unit(k).into_iter().map(|u| (2.0 * u - 1.0) * r).collect()
    }
}
