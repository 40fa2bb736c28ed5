//! Joint qubit–battery ladder dynamics.

use mcqhe_core::{
    apply_t_map, battery_distribution, evolve_cycles, operating_region, optimal_multistroke,
    run_cycle, stationary_state, ControlMarginalState, EngineSpec, JointLadderState, Stroke,
};

fn spec(bh: f64, bc: f64, n: u32) -> EngineSpec {
    EngineSpec::from_products(bh, bc, 1.0, n).unwrap()
}

const SPECS: [(f64, f64, u32); 5] = [
    (0.2, 0.8, 1),
    (0.1, 0.8, 2),
    (0.05, 1.5, 3),
    (0.3, 2.0, 1),
    (0.02, 0.4, 5),
];

#[test]
fn fixed_point_is_invariant() {
    for (bh, bc, n) in SPECS {
        let s = spec(bh, bc, n);
        let st = stationary_state(&s);
        let x = (-(n as f64) * bh).exp() * (-bc).exp();
        assert!((st.excited_population - x / (1.0 + x)).abs() < 1e-15);
        assert!(st.residual < 1e-14);
    }
}

#[test]
fn converges_from_ground_within_200_cycles() {
    let s = spec(0.2, 0.8, 1);
    let initial = JointLadderState::point(200, false, 0).unwrap();
    let ev = evolve_cycles(&initial, &s, 200).unwrap();
    let target = stationary_state(&s).excited_population;
    assert!((ev.final_state.excited_population() - target).abs() < 1e-10);
    assert!((ev.final_state.total_mass() - 1.0).abs() < 1e-12);
}

#[test]
fn deviation_contracts_by_the_cycle_eigenvalue() {
    for (bh, bc, n) in SPECS {
        let s = spec(bh, bc, n);
        let x = (-(n as f64) * bh).exp() * (-bc).exp();
        let target = stationary_state(&s).excited_population;
        let mut state = JointLadderState::point(50 * n as usize, false, 0).unwrap();
        let initial_dev = -target;
        for t in 1..=50 {
            state = apply_t_map(&state, &s).unwrap();
            let dev = state.excited_population() - target;
            let predicted = (-x).powi(t) * initial_dev;
            assert!((dev - predicted).abs() < 1e-10, "cycle {t}");
        }
    }
}

#[test]
fn stationary_work_per_cycle_matches_closed_form() {
    for (bh, bc, n) in SPECS {
        let s = spec(bh, bc, n);
        assert!(operating_region(&s));
        let p = stationary_state(&s).excited_population;
        let cycles = 20;
        let initial = JointLadderState::product(cycles * n as usize, p).unwrap();
        let ev = evolve_cycles(&initial, &s, cycles).unwrap();
        let closed = optimal_multistroke(&s).unwrap().work;
        for w in &ev.per_cycle_work {
            assert!((w - closed).abs() < 1e-10);
        }
    }
}

#[test]
fn energy_bookkeeping_matches_stroke_decomposition() {
    for (bh, bc, n) in SPECS {
        let s = spec(bh, bc, n);
        let p = stationary_state(&s).excited_population;
        let initial = JointLadderState::product(n as usize, p).unwrap();
        let after = apply_t_map(&initial, &s).unwrap();
        let qubit_change = s.omega() * (after.excited_population() - p);
        let battery_change =
            s.omega() * (after.battery_mean_offset() - initial.battery_mean_offset());

        let state = ControlMarginalState::diagonal(p, 1.0).unwrap();
        let trace = run_cycle(&state, &s, &Stroke::optimal_protocol(n)).unwrap();
        let heat = trace.heat_hot + trace.heat_cold;
        assert!((qubit_change + battery_change - heat).abs() < 1e-12);
    }
}

#[test]
fn mass_is_preserved_and_nonnegative() {
    for (bh, bc, n) in SPECS {
        let s = spec(bh, bc, n);
        let mut state = JointLadderState::product(30 * n as usize, 0.37).unwrap();
        for _ in 0..30 {
            state = apply_t_map(&state, &s).unwrap();
            assert!((state.total_mass() - 1.0).abs() < 1e-12);
            let q = battery_distribution(&state);
            assert!(q.mass.iter().all(|&m| m >= 0.0));
        }
    }
}

#[test]
fn even_cycles_from_stationary_mix_occupy_even_offsets() {
    let s = spec(0.2, 0.8, 1);
    let p = stationary_state(&s).excited_population;
    for cycles in [2, 4, 10] {
        let ev = evolve_cycles(&JointLadderState::product(cycles, p).unwrap(), &s, cycles).unwrap();
        let q = battery_distribution(&ev.final_state);
        for (k, mass) in q.iter() {
            if k % 2 != 0 {
                assert_eq!(mass, 0.0);
            }
        }
    }
}
