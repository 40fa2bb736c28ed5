#![allow(dead_code)]

use mcqhe_core::{BathParams, ControlMarginalState, ThermalStrokeParams};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SAMPLES: usize = 100_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform energy fraction with coherence uniform over its admissible range.
pub fn random_state(rng: &mut impl Rng, gap: f64) -> ControlMarginalState {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let alpha = rng.gen::<f64>() * (1.0 - z * z).sqrt();
    ControlMarginalState::from_bloch(z, alpha, gap).unwrap()
}

/// Bath with weight `a` uniform in `(0, 1)`.
pub fn random_bath(rng: &mut impl Rng, gap: f64) -> BathParams {
    let a: f64 = rng.gen_range(1e-6..1.0);
    BathParams::from_weight(a, gap).unwrap()
}

pub fn random_thermal(rng: &mut impl Rng, bath: &BathParams) -> ThermalStrokeParams {
    let lambda: f64 = rng.gen();
    let bound = mcqhe_core::gamma_max(lambda, bath.weight()).unwrap();
    ThermalStrokeParams::new(lambda, rng.gen::<f64>() * bound).unwrap()
}
