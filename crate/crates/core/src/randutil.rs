//! Seeded randomness helpers shared by the generators and searches.
//!
//! Per-trial generators are independent ChaCha streams derived from
//! (master seed, trial index), so trial outcomes do not depend on execution
//! order or thread count.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic per-trial RNG stream.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// One standard normal deviate (Box-Muller).
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Uniform direction on the unit sphere in dimension `d`.
pub fn random_unit_vector<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..d).map(|_| standard_normal(rng)).collect();
        if crate::linalg::normalize(&mut v) > 1e-6 {
            return v;
        }
    }
}

/// Uniform point in the unit ball in dimension `d`.
pub fn random_in_unit_ball<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    let u = random_unit_vector(rng, d);
    let r: f64 = rng.gen_range(0.0f64..1.0).powf(1.0 / d as f64);
    crate::linalg::scale(&u, r)
}
