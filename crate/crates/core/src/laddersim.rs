//! Explicit realization of the engine: populations of the working qubit
//! jointly with an integer battery ladder, evolved one cycle at a time.

use crate::engine::EngineSpec;
use crate::error::{Error, Result};

/// Tolerance on total mass for a valid joint state.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Diagonal joint state of qubit and battery on the window `[−K, K]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointLadderState {
    half_width: usize,
    ground: Vec<f64>,
    excited: Vec<f64>,
}

impl JointLadderState {
    /// Point mass at `(s, offset)` with `s` the excited flag.
    pub fn point(half_width: usize, excited: bool, offset: i64) -> Result<Self> {
        let mut state = Self::zeros(half_width);
        let i = state.index(offset).ok_or(Error::WindowOverflow {
            needed: offset.unsigned_abs() as usize,
            available: half_width,
        })?;
        if excited {
            state.excited[i] = 1.0;
        } else {
            state.ground[i] = 1.0;
        }
        Ok(state)
    }

    /// Qubit with excited population `p_excited`, battery at offset 0.
    pub fn product(half_width: usize, p_excited: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_excited) {
            return Err(Error::ParameterOutOfRange {
                name: "p_excited",
                value: p_excited,
            });
        }
        let mut state = Self::zeros(half_width);
        state.ground[half_width] = 1.0 - p_excited;
        state.excited[half_width] = p_excited;
        Ok(state)
    }

    /// Builds a state from explicit populations indexed from offset `−K`.
    pub fn from_populations(ground: Vec<f64>, excited: Vec<f64>) -> Result<Self> {
        if ground.len() != excited.len() || ground.len().is_multiple_of(2) {
            return Err(Error::ParameterOutOfRange {
                name: "population length",
                value: ground.len() as f64,
            });
        }
        if let Some(&bad) = ground.iter().chain(&excited).find(|p| p.is_nan() || **p < 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "population",
                value: bad,
            });
        }
        let state = Self {
            half_width: ground.len() / 2,
            ground,
            excited,
        };
        let total = state.total_mass();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Unnormalized(total));
        }
        Ok(state)
    }

    fn zeros(half_width: usize) -> Self {
        Self {
            half_width,
            ground: vec![0.0; 2 * half_width + 1],
            excited: vec![0.0; 2 * half_width + 1],
        }
    }

    fn index(&self, offset: i64) -> Option<usize> {
        let i = offset + self.half_width as i64;
        (0..self.ground.len() as i64).contains(&i).then_some(i as usize)
    }

    fn offset(&self, index: usize) -> i64 {
        index as i64 - self.half_width as i64
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn ground(&self, offset: i64) -> f64 {
        self.index(offset).map_or(0.0, |i| self.ground[i])
    }

    pub fn excited(&self, offset: i64) -> f64 {
        self.index(offset).map_or(0.0, |i| self.excited[i])
    }

    pub fn total_mass(&self) -> f64 {
        self.ground.iter().sum::<f64>() + self.excited.iter().sum::<f64>()
    }

    /// Excited population of the qubit marginal.
    pub fn excited_population(&self) -> f64 {
        self.excited.iter().sum()
    }

    /// Largest `|k|` carrying nonzero mass.
    pub fn support_radius(&self) -> usize {
        (0..self.ground.len())
            .filter(|&i| self.ground[i] > 0.0 || self.excited[i] > 0.0)
            .map(|i| self.offset(i).unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Mean battery offset, in units of the gap.
    pub fn battery_mean_offset(&self) -> f64 {
        (0..self.ground.len())
            .map(|i| self.offset(i) as f64 * (self.ground[i] + self.excited[i]))
            .sum()
    }
}

/// One engine cycle on the joint populations.
///
/// From `|g,m⟩` the hot strokes climb with weight `a_H^k(1 − a_H)` to
/// `|g,m−n+2k⟩`, or reach `|g,m+n⟩` and `|e,m+n⟩` with weights
/// `a_Hⁿ(1 − a_C)` and `a_Hⁿa_C`; from `|e,m⟩` the cycle lands on `|g,m−n⟩`.
pub fn apply_t_map(state: &JointLadderState, spec: &EngineSpec) -> Result<JointLadderState> {
    let n = spec.n_strokes() as usize;
    let needed = state.support_radius() + n;
    if needed > state.half_width {
        return Err(Error::WindowOverflow {
            needed,
            available: state.half_width,
        });
    }
    let a_h = spec.a_h();
    let a_c = spec.a_c();
    let one_minus_a_h = -(-spec.beta_h_omega()).exp_m1();
    let a_hn = (-(n as f64) * spec.beta_h_omega()).exp();
    let climb: Vec<f64> = (0..n)
        .map(|k| a_h.powi(k as i32) * one_minus_a_h)
        .collect();
    let top_ground = a_hn * (1.0 - a_c);
    let top_excited = a_hn * a_c;

    let mut next = JointLadderState::zeros(state.half_width);
    for i in 0..state.ground.len() {
        let g = state.ground[i];
        if g > 0.0 {
            for (k, w) in climb.iter().enumerate() {
                next.ground[i + 2 * k - n] += w * g;
            }
            next.ground[i + n] += top_ground * g;
            next.excited[i + n] += top_excited * g;
        }
        let e = state.excited[i];
        if e > 0.0 {
            next.ground[i - n] += e;
        }
    }
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryState {
    /// `a_Hⁿa_C/(1 + a_Hⁿa_C)`.
    pub excited_population: f64,
    /// Change of the excited population under one cycle started from it.
    pub residual: f64,
}

/// Fixed point of the qubit marginal under the cycle map.
pub fn stationary_state(spec: &EngineSpec) -> StationaryState {
    let x = (-(spec.n_strokes() as f64) * spec.beta_h_omega()).exp() * spec.a_c();
    let excited_population = x / (1.0 + x);
    let n = spec.n_strokes() as usize;
    let residual = JointLadderState::product(n, excited_population)
        .and_then(|s| apply_t_map(&s, spec))
        .map(|s| (s.excited_population() - excited_population).abs())
        .expect("window sized for one cycle");
    StationaryState {
        excited_population,
        residual,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub final_state: JointLadderState,
    /// Change of the battery mean energy in each cycle.
    pub per_cycle_work: Vec<f64>,
}

/// Applies the cycle map `cycles` times, recording the work of each cycle.
pub fn evolve_cycles(
    initial: &JointLadderState,
    spec: &EngineSpec,
    cycles: usize,
) -> Result<Evolution> {
    let needed = initial.support_radius() + cycles * spec.n_strokes() as usize;
    if needed > initial.half_width {
        return Err(Error::WindowOverflow {
            needed,
            available: initial.half_width,
        });
    }
    let mut state = initial.clone();
    let mut per_cycle_work = Vec::with_capacity(cycles);
    let mut mean = state.battery_mean_offset();
    for _ in 0..cycles {
        state = apply_t_map(&state, spec)?;
        let next_mean = state.battery_mean_offset();
        per_cycle_work.push(spec.omega() * (next_mean - mean));
        mean = next_mean;
    }
    Ok(Evolution {
        final_state: state,
        per_cycle_work,
    })
}

/// Battery marginal `q[k]`, stored densely from `min_offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct BatteryDistribution {
    pub min_offset: i64,
    pub mass: Vec<f64>,
}

impl BatteryDistribution {
    pub fn point(offset: i64) -> Self {
        Self {
            min_offset: offset,
            mass: vec![1.0],
        }
    }

    pub fn max_offset(&self) -> i64 {
        self.min_offset + self.mass.len() as i64 - 1
    }

    pub fn prob(&self, offset: i64) -> f64 {
        let i = offset - self.min_offset;
        if i < 0 {
            return 0.0;
        }
        self.mass.get(i as usize).copied().unwrap_or(0.0)
    }

    /// `(offset, q)` pairs in increasing offset order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.mass
            .iter()
            .enumerate()
            .map(move |(i, &q)| (self.min_offset + i as i64, q))
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Mean offset, in units of the gap.
    pub fn mean(&self) -> f64 {
        self.iter().map(|(k, q)| k as f64 * q).sum()
    }

    /// Offset variance, in units of the gap squared.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.iter().map(|(k, q)| (k as f64 - mean).powi(2) * q).sum()
    }
}

/// Traces out the qubit.
pub fn battery_distribution(state: &JointLadderState) -> BatteryDistribution {
    BatteryDistribution {
        min_offset: -(state.half_width as i64),
        mass: state
            .ground
            .iter()
            .zip(&state.excited)
            .map(|(g, e)| g + e)
            .collect(),
    }
}
