//! Correlated versus uncorrelated battery charging.

use mcqhe_core::{
    correlated_distribution, moments, operating_region, optimal_three_stroke, stationary_state,
    uncorrelated_distribution, EngineSpec,
};

fn spec(bh: f64, bc: f64) -> EngineSpec {
    EngineSpec::from_products(bh, bc, 1.0, 1).unwrap()
}

#[test]
fn closed_forms_agree_with_oracles_up_to_forty() {
    let s = spec(0.2, 0.8);
    let p = stationary_state(&s).excited_population;
    for n in 1..=40 {
        for start in [0.0, p, 1.0] {
            let c = correlated_distribution(n, start, &s).unwrap();
            assert!(!c.mismatch, "N={n}: {:?}", c.max_discrepancy);
        }
        let u = uncorrelated_distribution(n, &s).unwrap();
        assert!(u.binomial_discrepancy < 1e-10);
        if n % 2 == 0 {
            // the literal published form swaps the up/down exponents
            assert!(u.literal_mismatch);
        }
    }
}

#[test]
fn literal_binomial_is_the_mirror_image() {
    let s = spec(0.2, 0.8);
    let u = uncorrelated_distribution(6, &s).unwrap();
    let literal = u.literal.unwrap();
    for k in -6..=6 {
        assert!((literal.prob(k) - u.oracle.prob(-k)).abs() < 1e-14);
    }
}

#[test]
fn distributions_normalise() {
    let s = spec(0.2, 0.8);
    for n in 1..=50 {
        let c = correlated_distribution(n, 0.3, &s).unwrap();
        assert!((c.oracle.total() - 1.0).abs() < 1e-12);
        assert!((c.closed_form.unwrap().total() - 1.0).abs() < 1e-12);
        let u = uncorrelated_distribution(n, &s).unwrap();
        assert!((u.oracle.total() - 1.0).abs() < 1e-12);
        assert!((u.binomial.total() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn means_equal_total_work() {
    let s = spec(0.2, 0.8);
    let p1 = optimal_three_stroke(&s).unwrap().work;
    let p = stationary_state(&s).excited_population;
    for n in 1..=40 {
        let c = moments(&correlated_distribution(n, p, &s).unwrap().oracle).unwrap();
        let u = moments(&uncorrelated_distribution(n, &s).unwrap().oracle).unwrap();
        assert!((c.mean - n as f64 * p1).abs() < 1e-10);
        assert!((u.mean - n as f64 * p1).abs() < 1e-10);
    }
}

#[test]
fn two_step_variances() {
    let s = spec(0.2, 0.8);
    let p = stationary_state(&s).excited_population;
    let c = moments(&correlated_distribution(2, p, &s).unwrap().oracle).unwrap();
    let u = moments(&uncorrelated_distribution(2, &s).unwrap().oracle).unwrap();
    assert!((c.variance - 1.2151372).abs() < 1e-6);
    assert!((u.variance - 1.9223187).abs() < 1e-6);
}

#[test]
fn correlations_reduce_fluctuations() {
    let mut checked = 0;
    for i in 1..=10 {
        for j in 1..=10 {
            let s = spec(0.1 * i as f64, 0.4 * j as f64);
            if !operating_region(&s) {
                continue;
            }
            let p = stationary_state(&s).excited_population;
            for n in 2..=40 {
                let c = moments(&correlated_distribution(n, p, &s).unwrap().oracle).unwrap();
                let u = moments(&uncorrelated_distribution(n, &s).unwrap().oracle).unwrap();
                assert!(c.variance < u.variance, "({i}, {j}) N={n}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn single_step_variances_coincide() {
    let s = spec(0.2, 0.8);
    let p = stationary_state(&s).excited_population;
    let c = moments(&correlated_distribution(1, p, &s).unwrap().oracle).unwrap();
    let u = moments(&uncorrelated_distribution(1, &s).unwrap().oracle).unwrap();
    assert!((c.variance - u.variance).abs() < 1e-12);
}
