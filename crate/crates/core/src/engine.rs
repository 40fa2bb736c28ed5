//! Cycle composition, optimal engines and the brute-force grid oracle.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::golden_max;
use crate::qstate::{BathParams, ControlMarginalState};
use crate::strokes::{
    gamma_max, max_ergotropy_storing, thermal_stroke, work_stroke, StrokeOutcome,
    ThermalStrokeParams, WorkStrokeParams,
};

/// Width of the band around the operating-region boundary reported as
/// marginal instead of as an error.
pub const MARGINAL_TOLERANCE: f64 = 1e-12;

/// Bath temperatures, qubit gap and the number of hot/battery stroke pairs
/// per cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineSpec {
    beta_h: f64,
    beta_c: f64,
    omega: f64,
    n_strokes: u32,
}

impl EngineSpec {
    pub fn new(beta_h: f64, beta_c: f64, omega: f64, n_strokes: u32) -> Result<Self> {
        // validates the bath parameters
        BathParams::new(beta_h, omega)?;
        BathParams::new(beta_c, omega)?;
        if n_strokes == 0 {
            return Err(Error::NoStrokes);
        }
        Ok(Self {
            beta_h,
            beta_c,
            omega,
            n_strokes,
        })
    }

    /// Spec from the dimensionless products `β_Hω`, `β_Cω`.
    pub fn from_products(
        beta_h_omega: f64,
        beta_c_omega: f64,
        omega: f64,
        n_strokes: u32,
    ) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::NonPositiveGap(omega));
        }
        Self::new(beta_h_omega / omega, beta_c_omega / omega, omega, n_strokes)
    }

    pub fn beta_h(&self) -> f64 {
        self.beta_h
    }

    pub fn beta_c(&self) -> f64 {
        self.beta_c
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn n_strokes(&self) -> u32 {
        self.n_strokes
    }

    pub fn beta_h_omega(&self) -> f64 {
        self.beta_h * self.omega
    }

    pub fn beta_c_omega(&self) -> f64 {
        self.beta_c * self.omega
    }

    pub fn with_strokes(&self, n_strokes: u32) -> Result<Self> {
        Self::new(self.beta_h, self.beta_c, self.omega, n_strokes)
    }

    /// `a_H = exp(−β_Hω)`.
    pub fn a_h(&self) -> f64 {
        (-self.beta_h_omega()).exp()
    }

    /// `a_C = exp(−β_Cω)`.
    pub fn a_c(&self) -> f64 {
        (-self.beta_c_omega()).exp()
    }

    pub fn hot_bath(&self) -> BathParams {
        BathParams::new(self.beta_h, self.omega).expect("validated on construction")
    }

    pub fn cold_bath(&self) -> BathParams {
        BathParams::new(self.beta_c, self.omega).expect("validated on construction")
    }

    /// `exp(nβ_Hω) + exp(−β_Cω)`; the engine works iff this is below 2.
    pub fn boundary_sum(&self) -> f64 {
        (self.n_strokes as f64 * self.beta_h_omega()).exp() + self.a_c()
    }
}

/// Strict operating-region test `exp(nβ_Hω) + exp(−β_Cω) < 2`.
pub fn operating_region(spec: &EngineSpec) -> bool {
    spec.boundary_sum() < 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Strictly inside the operating region.
    Operating,
    /// On the boundary: zero efficiency and zero work.
    Marginal,
}

fn regime(spec: &EngineSpec) -> Result<Regime> {
    let sum = spec.boundary_sum();
    if (sum - 2.0).abs() <= MARGINAL_TOLERANCE {
        Ok(Regime::Marginal)
    } else if sum < 2.0 {
        Ok(Regime::Operating)
    } else {
        Err(Error::OutsideOperatingRegion {
            boundary_sum: sum,
            n_strokes: spec.n_strokes,
        })
    }
}

/// Efficiency, work per cycle and the stationary energies of an engine.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalCycle {
    pub efficiency: f64,
    /// Work per cycle, in energy units.
    pub work: f64,
    /// `E⁰, E¹, E², …, E^{2n}`: the energy before the first stroke and after
    /// each hot and battery stroke.
    pub energies: Vec<f64>,
    pub regime: Regime,
}

/// Closed-form optimum of the three-stroke (H, B, C) engine.
pub fn optimal_three_stroke(spec: &EngineSpec) -> Result<OptimalCycle> {
    optimal_multistroke(&spec.with_strokes(1)?)
}

/// Closed-form optimum of the engine with `n` hot/battery pairs and one
/// closing cold stroke.
pub fn optimal_multistroke(spec: &EngineSpec) -> Result<OptimalCycle> {
    let regime = regime(spec)?;
    let n = spec.n_strokes;
    let nf = n as f64;
    let bh = spec.beta_h_omega();
    let a_h = spec.a_h();
    let a_c = spec.a_c();
    let a_hn = (-nf * bh).exp();
    let one_minus_a = -(-bh).exp_m1();
    let one_minus_an = -(-nf * bh).exp_m1();
    let partition = 1.0 + a_c * a_hn;

    let (efficiency, work) = match regime {
        Regime::Marginal => (0.0, 0.0),
        Regime::Operating if n == 1 => {
            // 1 − (e^{β_Hω} − 1)/(1 − e^{−β_Cω}) and ω[2a_H/Z₁ − 1]
            let efficiency = 1.0 - bh.exp_m1() / -(-spec.beta_c_omega()).exp_m1();
            (efficiency, spec.omega * (2.0 * a_h / partition - 1.0))
        }
        Regime::Operating => {
            let efficiency = 1.0
                - one_minus_a * one_minus_an
                    / (one_minus_an * (1.0 + a_h) - nf * partition * one_minus_a);
            let work =
                spec.omega * (2.0 * a_h * one_minus_an / (one_minus_a * partition) - nf);
            (efficiency, work)
        }
    };

    let mut energies = Vec::with_capacity(2 * n as usize + 1);
    energies.push(spec.omega * a_c * a_hn / partition);
    for k in 1..=n {
        let a_hk = (-(k as f64) * bh).exp();
        energies.push(spec.omega * a_hk / partition);
        energies.push(spec.omega * (1.0 - a_hk / partition));
    }
    Ok(OptimalCycle {
        efficiency,
        work,
        energies,
        regime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrokeLabel {
    H,
    B,
    C,
}

impl std::fmt::Display for StrokeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StrokeLabel::H => "H",
            StrokeLabel::B => "B",
            StrokeLabel::C => "C",
        };
        f.write_str(s)
    }
}

/// One stroke of a protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stroke {
    Hot(ThermalStrokeParams),
    Work(WorkStrokeParams),
    /// Work stroke rotating whatever state arrives onto its passive point.
    MaxStoring,
    Cold(ThermalStrokeParams),
}

impl Stroke {
    pub fn label(&self) -> StrokeLabel {
        match self {
            Stroke::Hot(_) => StrokeLabel::H,
            Stroke::Work(_) | Stroke::MaxStoring => StrokeLabel::B,
            Stroke::Cold(_) => StrokeLabel::C,
        }
    }

    /// `(H(λ=1), B(max))ⁿ, C(λ=1)`.
    pub fn optimal_protocol(n_strokes: u32) -> Vec<Stroke> {
        let mut protocol = Vec::with_capacity(2 * n_strokes as usize + 1);
        for _ in 0..n_strokes {
            protocol.push(Stroke::Hot(ThermalStrokeParams::extremal()));
            protocol.push(Stroke::MaxStoring);
        }
        protocol.push(Stroke::Cold(ThermalStrokeParams::extremal()));
        protocol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub label: StrokeLabel,
    pub state_after: ControlMarginalState,
    pub energy_flow: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleTrace {
    pub steps: Vec<TraceStep>,
    /// Total work stored in the battery.
    pub work: f64,
    /// Heat entering the working body from the hot bath.
    pub heat_hot: f64,
    /// Heat entering the working body from the cold bath (negative when
    /// dumped).
    pub heat_cold: f64,
    /// `W/Q_H`; `None` when no heat was drawn from the hot bath.
    pub efficiency: Option<f64>,
    /// `|E_final − E_initial| + |α_final − α_initial|`.
    pub closure_residual: f64,
}

impl CycleTrace {
    pub fn final_state(&self) -> Option<&ControlMarginalState> {
        self.steps.last().map(|s| &s.state_after)
    }
}

/// Applies `protocol` stroke by stroke, using the hot bath for `H` and the
/// cold bath for `C`.
pub fn run_cycle(
    initial: &ControlMarginalState,
    spec: &EngineSpec,
    protocol: &[Stroke],
) -> Result<CycleTrace> {
    let hot = spec.hot_bath();
    let cold = spec.cold_bath();
    let mut state = *initial;
    let mut steps = Vec::with_capacity(protocol.len());
    let (mut work, mut heat_hot, mut heat_cold) = (0.0, 0.0, 0.0);
    for stroke in protocol {
        let StrokeOutcome {
            state_after,
            energy_flow,
        } = match stroke {
            Stroke::Hot(p) => thermal_stroke(&state, &hot, p)?,
            Stroke::Cold(p) => thermal_stroke(&state, &cold, p)?,
            Stroke::Work(p) => work_stroke(&state, p),
            Stroke::MaxStoring => max_ergotropy_storing(&state),
        };
        match stroke.label() {
            StrokeLabel::H => heat_hot += energy_flow,
            StrokeLabel::C => heat_cold += energy_flow,
            StrokeLabel::B => work += energy_flow,
        }
        steps.push(TraceStep {
            label: stroke.label(),
            state_after,
            energy_flow,
        });
        state = state_after;
    }
    let closure_residual = (state.energy() - initial.energy()).abs()
        + (state.coherence() - initial.coherence()).abs();
    Ok(CycleTrace {
        steps,
        work,
        heat_hot,
        heat_cold,
        efficiency: (heat_hot != 0.0).then(|| work / heat_hot),
        closure_residual,
    })
}

/// Settings for [`brute_force_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceConfig {
    /// Relative step of the `E⁰` axis and the final step of the refined
    /// axes.
    pub resolution: f64,
    /// Points per refined axis at every refinement level (at least 3).
    pub points_per_axis: usize,
    /// Whether to search initial coherences `α⁰ > 0`.
    pub allow_coherence: bool,
    /// Evaluate `E⁰` rows on the rayon pool.
    pub parallel: bool,
}

impl BruteForceConfig {
    pub fn new(resolution: f64) -> Self {
        Self {
            resolution,
            points_per_axis: 11,
            allow_coherence: true,
            parallel: true,
        }
    }
}

/// The best closed cycle found on the grid, with its stroke parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceOptimum {
    pub cycle: OptimalCycle,
    pub lambda_hot: f64,
    /// `γ_H` as a fraction of its admissible maximum.
    pub gamma_hot_fraction: f64,
    /// Ergotropy left in the working body after the battery stroke.
    pub understoring: f64,
    pub alpha0: f64,
    /// Closing cold-stroke weight, solved exactly.
    pub lambda_cold: f64,
    pub gamma_cold: f64,
    pub evaluated_points: u64,
}

/// Grid oracle for the three-stroke optimum with the default axis density.
pub fn brute_force_optimum(spec: &EngineSpec, grid_resolution: f64) -> Result<BruteForceOptimum> {
    brute_force_with(spec, &BruteForceConfig::new(grid_resolution))
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    efficiency: f64,
    work: f64,
    e0: f64,
    e1: f64,
    e2: f64,
    lambda_hot: f64,
    gamma_frac: f64,
    under_frac: f64,
    understoring: f64,
    alpha_frac: f64,
    alpha0: f64,
    lambda_cold: f64,
    gamma_cold: f64,
}

/// Axis box of the refined parameters `(λ_H, γ_H/γ_max, ξ/ωr₁, α⁰/α_max)`.
#[derive(Debug, Clone, Copy)]
struct AxisBox {
    lo: [f64; 4],
    hi: [f64; 4],
}

impl AxisBox {
    /// Grid values of one axis. `λ_H` and `γ_H` run downwards so that ties
    /// prefer the strongest, least dephasing hot stroke; `λ_H = 0` is
    /// skipped since it stores nothing.
    fn values(&self, axis: usize, points: usize) -> Vec<f64> {
        let (lo, hi) = (self.lo[axis], self.hi[axis]);
        if hi <= lo {
            return vec![lo];
        }
        let grid = (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64);
        match axis {
            0 => grid.rev().filter(|&v| v > 0.0).collect(),
            1 => grid.rev().collect(),
            _ => grid.collect(),
        }
    }

    fn step(&self, axis: usize, points: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / (points - 1) as f64
    }
}

/// Evaluates the three-stroke cycle `H(λ_H, γ_H) → B(ξ) → C(λ_C, γ_C)` from
/// `(E⁰, α⁰)`, solving the cold stroke from the closure conditions.
#[allow(clippy::too_many_arguments)]
fn evaluate_point(
    spec: &EngineSpec,
    e0_frac: f64,
    lambda_hot: f64,
    gamma_frac: f64,
    under_frac: f64,
    alpha_frac: f64,
) -> Option<Candidate> {
    const FEASIBILITY: f64 = 1e-12;
    let omega = spec.omega;
    let a_h = spec.a_h();
    let a_c = spec.a_c();
    let z0 = 2.0 * e0_frac - 1.0;
    let alpha0 = alpha_frac * (1.0 - z0 * z0).max(0.0).sqrt();

    // hot stroke
    let gamma_hot = gamma_frac * gamma_max(lambda_hot, a_h).ok()?;
    let z1 = z0 - lambda_hot * (z0 * (1.0 + a_h) + 1.0 - a_h);
    let alpha1 = gamma_hot * alpha0;
    let r1 = z1.hypot(alpha1);

    // battery stroke: end on the Bloch circle of radius r₁ at z₂
    let z2 = -r1 + 2.0 * under_frac * r1;
    let alpha2 = (r1 * r1 - z2 * z2).max(0.0).sqrt();

    // closing cold stroke: z⁰ = z₂ − λ_C[z₂(1 + a_C) + 1 − a_C]
    let drive = z2 * (1.0 + a_c) + 1.0 - a_c;
    let lambda_cold = if drive.abs() < 1e-15 {
        if (z2 - z0).abs() > FEASIBILITY {
            return None;
        }
        0.0
    } else {
        (z2 - z0) / drive
    };
    if !(-FEASIBILITY..=1.0 + FEASIBILITY).contains(&lambda_cold) {
        return None;
    }
    let lambda_cold = lambda_cold.clamp(0.0, 1.0);
    let gamma_cold = if alpha2 > 0.0 {
        alpha0 / alpha2
    } else if alpha0 == 0.0 {
        0.0
    } else {
        return None;
    };
    if gamma_cold > gamma_max(lambda_cold, a_c).ok()? + FEASIBILITY {
        return None;
    }

    let e1 = 0.5 * omega * (1.0 + z1);
    let e2 = 0.5 * omega * (1.0 + z2);
    let e0 = e0_frac * omega;
    let heat_hot = e1 - e0;
    let work = e1 - e2;
    if !(work > 0.0 && heat_hot > 0.0) {
        return None;
    }
    Some(Candidate {
        efficiency: work / heat_hot,
        work,
        e0,
        e1,
        e2,
        lambda_hot,
        gamma_frac,
        under_frac,
        understoring: omega * under_frac * r1,
        alpha_frac,
        alpha0,
        lambda_cold,
        gamma_cold,
    })
}

/// Best candidate over one `E⁰` row; the first maximum in iteration order
/// wins.
fn best_in_row(
    spec: &EngineSpec,
    e0_frac: f64,
    axes: &[Vec<f64>; 4],
) -> (Option<Candidate>, u64) {
    let mut best: Option<Candidate> = None;
    let mut count = 0u64;
    for &lambda_hot in &axes[0] {
        for &alpha_frac in &axes[3] {
            // γ_H only matters when there is coherence to damp
            let gammas: &[f64] = if alpha_frac == 0.0 {
                &axes[1][..1]
            } else {
                &axes[1]
            };
            for &gamma_frac in gammas {
                for &under_frac in &axes[2] {
                    // α⁰ > 0 needs a coherent battery output to close
                    if alpha_frac > 0.0 && under_frac == 0.0 {
                        continue;
                    }
                    count += 1;
                    if let Some(c) =
                        evaluate_point(spec, e0_frac, lambda_hot, gamma_frac, under_frac, alpha_frac)
                    {
                        if best.is_none_or(|b| c.efficiency > b.efficiency) {
                            best = Some(c);
                        }
                    }
                }
            }
        }
    }
    (best, count)
}

fn search_box(
    spec: &EngineSpec,
    e0_grid: &[f64],
    axes: &[Vec<f64>; 4],
    parallel: bool,
) -> (Option<Candidate>, u64) {
    let rows: Vec<(Option<Candidate>, u64)> = if parallel {
        e0_grid
            .par_iter()
            .map(|&e0| best_in_row(spec, e0, axes))
            .collect()
    } else {
        e0_grid.iter().map(|&e0| best_in_row(spec, e0, axes)).collect()
    };
    // ordered reduction: ties go to the smaller E⁰
    let mut best: Option<Candidate> = None;
    let mut count = 0;
    for (row_best, row_count) in rows {
        count += row_count;
        if let Some(c) = row_best {
            if best.is_none_or(|b| c.efficiency > b.efficiency) {
                best = Some(c);
            }
        }
    }
    (best, count)
}

/// Grid oracle for the three-stroke optimum.
///
/// `E⁰` runs over `[0, ω(1 − e^{β_Hω}/2))` with relative step `resolution`.
/// The remaining parameters (`λ_H`, `γ_H`, the understoring `ξ` and `α⁰`)
/// start on a coarse grid over their full ranges and are refined around the
/// incumbent until their step drops to `resolution`. The cold stroke is
/// solved exactly from the closure condition, so every reported cycle closes.
pub fn brute_force_with(spec: &EngineSpec, config: &BruteForceConfig) -> Result<BruteForceOptimum> {
    let resolution = config.resolution;
    if !(resolution > 0.0 && resolution <= 0.1) {
        return Err(Error::InvalidResolution(resolution));
    }
    if spec.n_strokes != 1 {
        return Err(Error::ParameterOutOfRange {
            name: "n_strokes",
            value: spec.n_strokes as f64,
        });
    }
    let points = config.points_per_axis.max(3);
    let e0_max = 1.0 - 0.5 * spec.beta_h_omega().exp();
    if e0_max <= 0.0 {
        return Err(Error::EmptyFeasibleSet);
    }
    let e0_steps = (1.0 / resolution).ceil() as usize;
    let e0_grid: Vec<f64> = (0..e0_steps)
        .map(|i| e0_max * i as f64 / e0_steps as f64)
        .collect();

    let mut bounds = AxisBox {
        lo: [0.0; 4],
        hi: [1.0, 1.0, 1.0, if config.allow_coherence { 1.0 } else { 0.0 }],
    };
    let mut best: Option<Candidate> = None;
    let mut evaluated = 0u64;
    loop {
        let axes = [0, 1, 2, 3].map(|axis| bounds.values(axis, points));
        let (level_best, count) = search_box(spec, &e0_grid, &axes, config.parallel);
        evaluated += count;
        if let Some(c) = level_best {
            if best.is_none_or(|b| c.efficiency > b.efficiency) {
                best = Some(c);
            }
        }
        let Some(incumbent) = best else { break };
        let steps = [0, 1, 2, 3].map(|axis| bounds.step(axis, points));
        if steps.iter().all(|&s| s <= resolution) {
            break;
        }
        let centre = [
            incumbent.lambda_hot,
            incumbent.gamma_frac,
            incumbent.under_frac,
            incumbent.alpha_frac,
        ];
        for axis in 0..4 {
            if steps[axis] > resolution {
                bounds.lo[axis] = (centre[axis] - steps[axis]).max(0.0);
                bounds.hi[axis] = (centre[axis] + steps[axis]).min(1.0);
            }
        }
    }

    let c = best.ok_or(Error::EmptyFeasibleSet)?;
    Ok(BruteForceOptimum {
        cycle: OptimalCycle {
            efficiency: c.efficiency,
            work: c.work,
            energies: vec![c.e0, c.e1, c.e2],
            regime: Regime::Operating,
        },
        lambda_hot: c.lambda_hot,
        gamma_hot_fraction: c.gamma_frac,
        understoring: c.understoring,
        alpha0: c.alpha0,
        lambda_cold: c.lambda_cold,
        gamma_cold: c.gamma_cold,
        evaluated_points: evaluated,
    })
}

/// Greedy single-bath extraction: number of profitable stroke pairs and the
/// total work they store.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleBathExtraction {
    pub strokes: u32,
    pub max_work: f64,
}

/// Maximal work from repeated (extremal heat stroke, maximal storing) pairs
/// against one bath, starting from a passive state of energy `energy`.
pub fn single_bath_wmax(energy: f64, beta: f64, omega: f64) -> Result<SingleBathExtraction> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::NonPositiveGap(omega));
    }
    if !(0.0..=omega).contains(&energy) {
        return Err(Error::EnergyOutOfRange(energy / omega));
    }
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::NegativeInverseTemperature(beta));
    }
    if beta == 0.0 {
        return Err(Error::InfiniteTemperature);
    }
    let bw = beta * omega;
    let count = ((2.0 * (1.0 - energy / omega)).ln() / bw).floor();
    if count < 1.0 {
        return Ok(SingleBathExtraction {
            strokes: 0,
            max_work: 0.0,
        });
    }
    let n = count.min(u32::MAX as f64) as u32;
    let a = (-bw).exp();
    let max_work = 2.0 * a * (omega - energy) * -(-(n as f64) * bw).exp_m1() / -(-bw).exp_m1()
        - n as f64 * omega;
    Ok(SingleBathExtraction {
        strokes: n,
        max_work,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceEfficiencies {
    pub carnot: f64,
    pub curzon_ahlborn: f64,
}

pub fn reference_efficiencies(spec: &EngineSpec) -> Result<ReferenceEfficiencies> {
    let (bh, bc) = (spec.beta_h, spec.beta_c);
    if !(bc > bh && bh > 0.0) {
        return Err(Error::TemperatureOrder {
            beta_h: bh,
            beta_c: bc,
        });
    }
    let ratio = bh / bc;
    Ok(ReferenceEfficiencies {
        carnot: 1.0 - ratio,
        curzon_ahlborn: 1.0 - ratio.sqrt(),
    })
}

/// Maximal Otto-cycle work per modulated gap at fixed efficiency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OttoOptimum {
    /// `P_Otto/(ε_H − ε_C)`.
    pub work_per_gap: f64,
    /// Maximiser `z = β_Hε_C`; zero when the maximand vanishes identically.
    pub z: f64,
}

/// Upper end of the Otto scan; beyond it both logistic terms are below 2e−9.
pub const OTTO_SCAN_MAX: f64 = 20.0;
pub const OTTO_SCAN_STEP: f64 = 1e-3;

/// `max_{z>0} [(1 + e^{z/(1−η)})⁻¹ − (1 + e^{zy})⁻¹]` with `y = β_C/β_H`.
pub fn otto_optimal(y: f64, eta_otto: f64) -> Result<OttoOptimum> {
    if !(y >= 1.0 && y.is_finite()) {
        return Err(Error::ParameterOutOfRange { name: "y", value: y });
    }
    let carnot = 1.0 - 1.0 / y;
    if eta_otto.is_nan() || eta_otto < 0.0 {
        return Err(Error::ParameterOutOfRange {
            name: "eta_otto",
            value: eta_otto,
        });
    }
    if eta_otto > carnot + 1e-12 {
        return Err(Error::BeyondCarnot {
            eta: eta_otto,
            carnot,
        });
    }
    let hot_scale = 1.0 / (1.0 - eta_otto);
    // at Carnot efficiency both exponents coincide and the maximand is zero
    if (hot_scale - y).abs() <= 1e-12 * y {
        return Ok(OttoOptimum {
            work_per_gap: 0.0,
            z: 0.0,
        });
    }
    let maximand = |z: f64| 1.0 / (1.0 + (z * hot_scale).exp()) - 1.0 / (1.0 + (z * y).exp());
    let steps = (OTTO_SCAN_MAX / OTTO_SCAN_STEP).round() as usize;
    let mut best_z = OTTO_SCAN_STEP;
    let mut best = f64::NEG_INFINITY;
    for i in 1..=steps {
        let z = i as f64 * OTTO_SCAN_STEP;
        let v = maximand(z);
        if v > best {
            best = v;
            best_z = z;
        }
    }
    let lo = (best_z - OTTO_SCAN_STEP).max(0.0);
    let hi = (best_z + OTTO_SCAN_STEP).min(OTTO_SCAN_MAX);
    let (z, value) = golden_max(lo, hi, maximand);
    let (z, value) = if value >= best { (z, value) } else { (best_z, best) };
    if value <= 0.0 {
        return Ok(OttoOptimum {
            work_per_gap: 0.0,
            z: 0.0,
        });
    }
    Ok(OttoOptimum {
        work_per_gap: value,
        z,
    })
}
