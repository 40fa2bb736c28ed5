//! Grid oracle for the single-stroke ergotropy bound and the extraction
//! thresholds.

mod common;

use common::{random_bath, random_state, rng};
use mcqhe_core::strokes::{convexity_bounds, delta_r_curvature, lambda0_numeric};
use mcqhe_core::{delta_r_max, extraction_thresholds, gamma_max, thermal_stroke, BathParams, ControlMarginalState, ThermalStrokeParams};
use rand::Rng;

fn gain(state: &ControlMarginalState, bath: &BathParams, lambda: f64, gamma_frac: f64) -> f64 {
    let gamma = gamma_frac * gamma_max(lambda, bath.weight()).unwrap();
    let params = ThermalStrokeParams::new(lambda, gamma).unwrap();
    thermal_stroke(state, bath, &params).unwrap().state_after.ergotropy() - state.ergotropy()
}

/// Max over `λ` on `[lo, hi]` with `steps` intervals and over 11 `γ` fractions.
fn grid_max(
    state: &ControlMarginalState,
    bath: &BathParams,
    lo: f64,
    hi: f64,
    steps: usize,
) -> (f64, f64) {
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..=steps {
        let lambda = lo + (hi - lo) * i as f64 / steps as f64;
        for j in 0..=10 {
            let v = gain(state, bath, lambda, j as f64 / 10.0);
            if v > best.0 {
                best = (v, lambda);
            }
        }
    }
    best
}

#[test]
fn grid_never_beats_the_extremal_bound() {
    let mut rng = rng(11);
    let mut positive = 0;
    for _ in 0..1000 {
        let bath = random_bath(&mut rng, 1.0);
        let state = random_state(&mut rng, 1.0);
        let bound = delta_r_max(&state, &bath);
        let (coarse, at) = grid_max(&state, &bath, 0.0, 1.0, 100);
        let (fine, at) = grid_max(&state, &bath, (at - 1e-2).max(0.0), (at + 1e-2).min(1.0), 200);
        let best = fine.max(coarse);
        assert!(best <= bound + 1e-6, "grid {best} exceeds bound {bound}");
        if bound > 1e-6 {
            positive += 1;
            assert!((best - bound).abs() <= 1e-6);
            assert!(at >= 1.0 - 1e-4, "maximum at λ = {at}");
        }
    }
    assert!(positive > 50);
}

#[test]
fn lambda_threshold_closed_form_matches_bisection() {
    let mut rng = rng(12);
    let mut checked = 0;
    for _ in 0..20_000 {
        let a: f64 = rng.gen_range(0.5..1.0);
        let z: f64 = rng.gen_range(-1.0..0.0);
        let b: f64 = if rng.gen_bool(0.2) { 0.0 } else { rng.gen() };
        let t = extraction_thresholds(a, z, b).unwrap();
        if let Some(numeric) = t.lambda0_numeric {
            if numeric > 0.0 {
                checked += 1;
                assert!((numeric - t.lambda0_closed).abs() < 1e-9, "a={a} z={z} B={b}");
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn threshold_z0_matches_diagonal_value_and_marks_lambda_one() {
    for a in [0.55, 0.7, 0.8, 0.95] {
        let t = extraction_thresholds(a, -0.9, 0.0).unwrap();
        let z0 = t.z0_numeric.unwrap();
        assert!((z0 - t.z0_diagonal).abs() < 1e-10);
        assert!(t.z0_discrepancy);
        for b in [0.0, 0.3, 1.0] {
            let z0 = extraction_thresholds(a, -0.9, b).unwrap().z0_numeric.unwrap();
            let just_below = z0 - 1e-6;
            let alpha = (b * (1.0 - just_below * just_below)).sqrt();
            let l0 = lambda0_numeric(a, just_below, alpha).unwrap();
            assert!(l0 > 0.99);
            let above = z0 + 1e-6;
            let alpha = (b * (1.0 - above * above)).sqrt();
            assert!(lambda0_numeric(a, above, alpha).is_err());
        }
    }
}

#[test]
fn coherence_shrinks_the_extraction_window() {
    for a in [0.6, 0.8, 0.95] {
        let mut last = f64::INFINITY;
        for b in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let z0 = extraction_thresholds(a, -0.5, b).unwrap().z0_numeric.unwrap();
            assert!(z0 <= last + 1e-12);
            last = z0;
        }
    }
}

#[test]
fn curvature_sign_follows_convexity_bounds() {
    let mut rng = rng(13);
    let mut checked = 0;
    for _ in 0..20_000 {
        let a: f64 = rng.gen_range(0.05..0.99);
        let b: f64 = rng.gen();
        let z: f64 = rng.gen_range(-0.999..0.999);
        let lambda: f64 = rng.gen_range(0.01..0.99);
        let (z_plus, z_minus) = convexity_bounds(a, b);
        if (z - z_plus).abs() < 1e-3 || (z - z_minus).abs() < 1e-3 {
            continue;
        }
        let alpha = (b * (1.0 - z * z)).sqrt();
        let curvature = delta_r_curvature(lambda, z, alpha, a);
        if curvature.abs() < 1e-5 {
            continue;
        }
        checked += 1;
        let convex = z <= z_plus || z >= z_minus;
        assert_eq!(curvature > 0.0, convex, "a={a} B={b} z={z} λ={lambda}");
    }
    assert!(checked > 5000);
}
