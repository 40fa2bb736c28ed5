//! Battery work distributions after many cycles: correlated charging by one
//! engine versus independent charging by uncorrelated qubits.

use crate::engine::EngineSpec;
use crate::error::{Error, Result};
use crate::laddersim::{battery_distribution, evolve_cycles, BatteryDistribution, JointLadderState};

/// Agreement required between a closed form and its reference evolution.
pub const AGREEMENT_TOLERANCE: f64 = 1e-10;
/// Normalization tolerance accepted by [`moments`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Single-cycle step probabilities of the three-stroke walk started in the
/// ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    /// Up one rung, qubit back in the ground state.
    pub p_plus: f64,
    /// Down one rung.
    pub p_minus: f64,
    /// Up one rung into the excited state; the next cycle returns down.
    pub p_zero: f64,
}

impl WalkParams {
    pub fn from_spec(spec: &EngineSpec) -> Self {
        let a_h = spec.a_h();
        let p_zero = a_h * spec.a_c();
        Self {
            p_plus: a_h - p_zero,
            p_minus: -(-spec.beta_h_omega()).exp_m1(),
            p_zero,
        }
    }
}

/// Excited population of each independently charging qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncorrelatedParams {
    pub p_up: f64,
}

impl UncorrelatedParams {
    pub fn from_spec(spec: &EngineSpec) -> Self {
        let a_h = spec.a_h();
        Self {
            p_up: a_h / (1.0 + a_h * spec.a_c()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// Mean and variance of a battery distribution in units of the gap.
pub fn moments(dist: &BatteryDistribution) -> Result<Moments> {
    let total = dist.total();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::Unnormalized(total));
    }
    Ok(Moments {
        mean: dist.mean(),
        variance: dist.variance(),
    })
}

/// `ln k!` for `k = 0..=max`.
struct LnFactorials(Vec<f64>);

impl LnFactorials {
    fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let mut acc = 0.0;
        table.push(acc);
        for k in 1..=max {
            acc += (k as f64).ln();
            table.push(acc);
        }
        Self(table)
    }

    fn get(&self, k: usize) -> f64 {
        self.0[k]
    }
}

/// `p^n` with `0⁰ = 1`, as a logarithm.
fn ln_power(p: f64, n: i64) -> f64 {
    if n == 0 {
        0.0
    } else {
        n as f64 * p.ln()
    }
}

/// Weight of one trinomial class of paths with the given step counts.
fn trinomial(ln_fact: &LnFactorials, walk: &WalkParams, up: i64, down: i64, stay: i64) -> f64 {
    if up < 0 || down < 0 || stay < 0 {
        return 0.0;
    }
    let ln_coeff = ln_fact.get((up + down + stay) as usize)
        - ln_fact.get(up as usize)
        - ln_fact.get(down as usize)
        - ln_fact.get(stay as usize);
    (ln_coeff
        + ln_power(walk.p_plus, up)
        + ln_power(walk.p_minus, down)
        + ln_power(walk.p_zero, stay))
    .exp()
}

/// Probability of a net displacement `j` after `cycles` cycles started in
/// the ground state, summed over paths.
fn from_ground(ln_fact: &LnFactorials, walk: &WalkParams, j: i64, cycles: i64) -> f64 {
    if cycles == 0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    if (j - cycles).rem_euclid(2) != 0 {
        return 0.0;
    }
    let f = |up, down, stay| trinomial(ln_fact, walk, up, down, stay);
    if cycles % 2 == 0 {
        let (k, m) = (j / 2, cycles / 2);
        (k.abs()..=m)
            .map(|i| {
                let finish_excited = if i + k == 0 {
                    0.0
                } else {
                    (i + k) as f64 * walk.p_zero / ((i + m) as f64 * walk.p_plus)
                };
                (1.0 + finish_excited) * f(i + k, i - k, m - i)
            })
            .sum()
    } else {
        let (k, n) = ((j - 1).div_euclid(2), (cycles - 1) / 2);
        let boundary = if k < 0 {
            f(0, 2 * k.abs() - 1, n - k.abs() + 1)
        } else {
            0.0
        };
        boundary
            + (k.abs()..=n)
                .map(|i| {
                    let full = if i + k + 1 == 0 {
                        0.0
                    } else {
                        walk.p_plus * (n + i + 1) as f64 / (k + i + 1) as f64
                    };
                    (full + walk.p_zero) * f(k + i, i - k, n - i)
                })
                .sum::<f64>()
    }
}

/// Correlated battery distribution from the exact cycle map and, for the
/// three-stroke engine, from the trinomial path sums.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedComparison {
    /// Exact evolution of the joint populations; authoritative.
    pub oracle: BatteryDistribution,
    /// Path-sum closed form; only available for one stroke pair per cycle.
    pub closed_form: Option<BatteryDistribution>,
    /// Largest pointwise difference between the two.
    pub max_discrepancy: Option<f64>,
    /// Whether the closed form disagrees beyond [`AGREEMENT_TOLERANCE`].
    pub mismatch: bool,
}

/// Battery distribution after `cycles` cycles of one engine whose qubit
/// starts diagonal with excited population `initial_excited` and whose
/// battery starts at offset 0.
pub fn correlated_distribution(
    cycles: usize,
    initial_excited: f64,
    spec: &EngineSpec,
) -> Result<CorrelatedComparison> {
    if cycles == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "cycles",
            value: 0.0,
        });
    }
    let n = spec.n_strokes() as usize;
    let half_width = cycles * n;
    let initial = JointLadderState::product(half_width, initial_excited)?;
    let evolved = evolve_cycles(&initial, spec, cycles)?;
    let oracle = battery_distribution(&evolved.final_state);

    let closed_form = (n == 1).then(|| {
        let walk = WalkParams::from_spec(spec);
        let ln_fact = LnFactorials::new(2 * cycles + 2);
        let big_n = cycles as i64;
        let mass = (-big_n..=big_n)
            .map(|j| {
                (1.0 - initial_excited) * from_ground(&ln_fact, &walk, j, big_n)
                    + initial_excited * from_ground(&ln_fact, &walk, j + 1, big_n - 1)
            })
            .collect();
        BatteryDistribution {
            min_offset: -big_n,
            mass,
        }
    });
    let max_discrepancy = closed_form.as_ref().map(|c| max_difference(&oracle, c));
    Ok(CorrelatedComparison {
        mismatch: max_discrepancy.is_some_and(|d| d > AGREEMENT_TOLERANCE),
        oracle,
        closed_form,
        max_discrepancy,
    })
}

/// Battery distribution of independent ±1 charges, computed three ways.
#[derive(Debug, Clone, PartialEq)]
pub struct UncorrelatedComparison {
    /// Repeated convolution of single-stroke distributions; authoritative.
    pub oracle: BatteryDistribution,
    /// `q(2u − N) = C(N, u) p^u (1 − p)^{N−u}`.
    pub binomial: BatteryDistribution,
    /// The published even-`N` form `C(2n, n − |k|) p^{n−k} (1 − p)^{n+k}`
    /// taken literally; `None` for odd `N`.
    pub literal: Option<BatteryDistribution>,
    pub binomial_discrepancy: f64,
    pub literal_discrepancy: Option<f64>,
    /// Whether the literal form disagrees with the oracle beyond
    /// [`AGREEMENT_TOLERANCE`].
    pub literal_mismatch: bool,
}

/// Battery distribution after `strokes` independent qubits, each in the
/// optimal post-hot-stroke state, are fully discharged into the battery.
pub fn uncorrelated_distribution(strokes: usize, spec: &EngineSpec) -> Result<UncorrelatedComparison> {
    if strokes == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "strokes",
            value: 0.0,
        });
    }
    let p = UncorrelatedParams::from_spec(spec).p_up;
    let big_n = strokes as i64;

    let mut conv = vec![1.0];
    for _ in 0..strokes {
        let mut next = vec![0.0; conv.len() + 1];
        for (u, q) in conv.iter().enumerate() {
            next[u] += (1.0 - p) * q;
            next[u + 1] += p * q;
        }
        conv = next;
    }
    // index u counts up-steps; offset 2u − N, spread over the dense window
    let spread = |by_up: &[f64]| {
        let mut mass = vec![0.0; 2 * strokes + 1];
        for (u, q) in by_up.iter().enumerate() {
            mass[2 * u] = *q;
        }
        BatteryDistribution {
            min_offset: -big_n,
            mass,
        }
    };
    let oracle = spread(&conv);

    let ln_fact = LnFactorials::new(strokes);
    let ln_binom = |n: i64, r: i64| {
        ln_fact.get(n as usize) - ln_fact.get(r as usize) - ln_fact.get((n - r) as usize)
    };
    let by_up: Vec<f64> = (0..=big_n)
        .map(|u| (ln_binom(big_n, u) + ln_power(p, u) + ln_power(1.0 - p, big_n - u)).exp())
        .collect();
    let binomial = spread(&by_up);

    let literal = strokes.is_multiple_of(2).then(|| {
        let n = big_n / 2;
        let mass = (-big_n..=big_n)
            .map(|offset| {
                if offset % 2 != 0 {
                    return 0.0;
                }
                let k = offset / 2;
                (ln_binom(2 * n, n - k.abs()) + ln_power(p, n - k) + ln_power(1.0 - p, n + k)).exp()
            })
            .collect();
        BatteryDistribution {
            min_offset: -big_n,
            mass,
        }
    });

    let binomial_discrepancy = max_difference(&oracle, &binomial);
    let literal_discrepancy = literal.as_ref().map(|l| max_difference(&oracle, l));
    Ok(UncorrelatedComparison {
        literal_mismatch: literal_discrepancy.is_some_and(|d| d > AGREEMENT_TOLERANCE),
        oracle,
        binomial,
        literal,
        binomial_discrepancy,
        literal_discrepancy,
    })
}

fn max_difference(a: &BatteryDistribution, b: &BatteryDistribution) -> f64 {
    let lo = a.min_offset.min(b.min_offset);
    let hi = a.max_offset().max(b.max_offset());
    (lo..=hi)
        .map(|k| (a.prob(k) - b.prob(k)).abs())
        .fold(0.0, f64::max)
}
