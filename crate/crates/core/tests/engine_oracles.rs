//! Closed-form engine results against stroke-by-stroke simulation.

mod common;

use common::rng;
use mcqhe_core::{
    max_ergotropy_storing, operating_region, optimal_multistroke, optimal_three_stroke,
    otto_optimal, run_cycle, single_bath_wmax, thermal_stroke, BathParams, ControlMarginalState,
    EngineSpec, Stroke, ThermalStrokeParams,
};
use rand::Rng;

fn spec(bh: f64, bc: f64, n: u32) -> EngineSpec {
    EngineSpec::from_products(bh, bc, 1.0, n).unwrap()
}

/// Repeats (extremal heat stroke, maximal storing) while the heat stroke
/// still creates ergotropy.
fn greedy_extraction(energy: f64, beta_omega: f64) -> (u32, f64) {
    let bath = BathParams::new(beta_omega, 1.0).unwrap();
    let mut state = ControlMarginalState::diagonal(energy, 1.0).unwrap();
    let (mut strokes, mut work) = (0, 0.0);
    loop {
        let heated = thermal_stroke(&state, &bath, &ThermalStrokeParams::extremal())
            .unwrap()
            .state_after;
        if heated.ergotropy() <= 0.0 {
            return (strokes, work);
        }
        let stored = max_ergotropy_storing(&heated);
        strokes += 1;
        work += stored.energy_flow;
        state = stored.state_after;
    }
}

#[test]
fn single_bath_closed_form_matches_greedy_strokes() {
    let mut rng = rng(21);
    for _ in 0..1000 {
        let energy: f64 = rng.gen_range(0.0..0.5);
        let beta_omega: f64 = rng.gen_range(0.05..1.0);
        let closed = single_bath_wmax(energy, beta_omega, 1.0).unwrap();
        let (strokes, work) = greedy_extraction(energy, beta_omega);
        assert!(
            (closed.max_work - work).abs() <= 1e-12 * work.max(1.0),
            "E={energy} βω={beta_omega}: {} vs {work}",
            closed.max_work
        );
        // the last closed-form stroke can carry exactly zero work
        assert!(closed.strokes == strokes || closed.strokes == strokes + 1);
    }
    let greedy = greedy_extraction(0.0, 0.2);
    assert_eq!(greedy.0, 3);
    assert!((greedy.1 - 1.0757249).abs() < 1e-6);
}

#[test]
fn two_pair_engine_by_composed_strokes() {
    let s = spec(0.1, 0.8, 2);
    let closed = optimal_multistroke(&s).unwrap();
    let initial = ControlMarginalState::diagonal(closed.energies[0], 1.0).unwrap();
    let trace = run_cycle(&initial, &s, &Stroke::optimal_protocol(2)).unwrap();
    assert!(trace.closure_residual < 1e-12);
    let eta = trace.efficiency.unwrap();
    assert!((eta - 0.7969).abs() <= 1e-3);
    assert!((trace.work - 0.5201).abs() <= 1e-3);
    assert!((eta - closed.efficiency).abs() < 1e-12);
    assert!((trace.work - closed.work).abs() < 1e-12);
    for (step, expected) in trace.steps.iter().zip(&closed.energies[1..]) {
        assert!((step.state_after.energy() - expected).abs() < 1e-12);
    }
}

fn in_region_grid(points: usize, max: f64) -> Vec<(f64, f64)> {
    let axis = |i: usize| max * (i + 1) as f64 / points as f64;
    let mut out = Vec::new();
    for i in 0..points {
        for j in 0..points {
            let (bh, bc) = (axis(i), axis(j));
            if operating_region(&spec(bh, bc, 1)) {
                out.push((bh, bc));
            }
        }
    }
    out
}

#[test]
fn closed_forms_match_simulation_across_region() {
    for (bh, bc) in in_region_grid(20, 3.0) {
        for n in 1..=10 {
            let s = spec(bh, bc, n);
            if !operating_region(&s) {
                continue;
            }
            let closed = optimal_multistroke(&s).unwrap();
            let initial = ControlMarginalState::diagonal(closed.energies[0], 1.0).unwrap();
            let trace = run_cycle(&initial, &s, &Stroke::optimal_protocol(n)).unwrap();
            assert!(trace.closure_residual < 1e-12);
            assert!((trace.work - closed.work).abs() < 1e-11);
            assert!((trace.efficiency.unwrap() - closed.efficiency).abs() < 1e-11);
            assert!((trace.work - trace.heat_hot - trace.heat_cold).abs() < 1e-12);
        }
    }
}

#[test]
fn more_pairs_trade_efficiency_for_work() {
    let grid = in_region_grid(20, 3.0);
    assert!(grid.len() > 50);
    for (bh, bc) in grid {
        let one = optimal_three_stroke(&spec(bh, bc, 1)).unwrap();
        let mut last_work = one.work;
        for n in 2..=10 {
            let s = spec(bh, bc, n);
            if !operating_region(&s) {
                break;
            }
            let c = optimal_multistroke(&s).unwrap();
            assert!(c.efficiency <= one.efficiency + 1e-12, "({bh}, {bc}) n={n}");
            assert!(c.work >= last_work - 1e-12, "({bh}, {bc}) n={n}");
            last_work = c.work;
        }
    }
}

#[test]
fn efficiency_stays_below_carnot() {
    let grid = in_region_grid(50, 5.0);
    assert!(grid.len() > 200);
    for (bh, bc) in grid {
        let eta = optimal_three_stroke(&spec(bh, bc, 1)).unwrap().efficiency;
        assert!(eta < 1.0 - bh / bc, "({bh}, {bc})");
    }
}

#[test]
fn high_temperature_limit_reaches_carnot() {
    for ratio in [1.5, 2.0, 4.0, 10.0] {
        let eta = |x: f64| optimal_three_stroke(&spec(x, ratio * x, 1)).unwrap().efficiency;
        let xs = [1e-2, 1e-3, 1e-4];
        let ys = xs.map(eta);
        let slope = (ys[1] - ys[2]) / (xs[1] - xs[2]);
        let limit = ys[2] - slope * xs[2];
        let carnot = 1.0 - 1.0 / ratio;
        assert!((limit - carnot).abs() < 1e-3, "ratio {ratio}: {limit} vs {carnot}");
        // the finite-difference slopes agree, so the approach is linear
        let coarse_slope = (ys[0] - ys[1]) / (xs[0] - xs[1]);
        assert!((coarse_slope - slope).abs() < 0.05 * slope.abs().max(1.0));
    }
}

#[test]
fn otto_regression_value() {
    let o = otto_optimal(4.0, 0.3).unwrap();
    assert!((o.work_per_gap - 0.21478691589).abs() < 1e-9);
    assert!((o.z - 0.60744).abs() < 1e-3);
}

#[test]
fn otto_vanishes_at_equal_temperatures_and_at_carnot() {
    assert_eq!(otto_optimal(1.0, 0.0).unwrap().work_per_gap, 0.0);
    for y in [1.5, 2.0, 4.0, 10.0] {
        assert_eq!(otto_optimal(y, 1.0 - 1.0 / y).unwrap().work_per_gap, 0.0);
        let below = otto_optimal(y, 0.5 * (1.0 - 1.0 / y)).unwrap().work_per_gap;
        assert!(below > 0.0 && below <= 0.5);
    }
}

#[test]
fn boundary_engine_is_marginal() {
    let bh: f64 = 0.3;
    let bc = -(2.0 - bh.exp()).ln();
    let c = optimal_three_stroke(&spec(bh, bc, 1)).unwrap();
    assert_eq!((c.efficiency, c.work), (0.0, 0.0));
}
