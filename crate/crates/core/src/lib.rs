//! Minimal-coupling quantum heat engines with a qubit working body.
//!
//! The crate is organised bottom-up:
//!
//! - [`qstate`]: the two-level control-marginal state and its scalar
//!   functionals (energy, ergotropy, passive energy, entropy, free energy).
//! - [`strokes`]: heat strokes (qubit thermal operations) and work strokes
//!   (Bloch rotations), plus the ergotropy-extraction bound and thresholds.
//! - [`engine`]: cycle composition, closed-form optimal cycles, a brute-force
//!   grid oracle, single-bath extraction and reference efficiencies.
//! - [`laddersim`]: the explicit qubit ⊗ battery-ladder realization evolved by
//!   the one-cycle stochastic map.
//! - [`fluct`]: battery work distributions for correlated and uncorrelated
//!   charging, with closed forms checked against exact evolution.
//!
//! Energies are in the same units as the qubit gap ω; entropies are in nats
//! with Boltzmann's constant set to one.

pub mod engine;
pub mod error;
pub mod fluct;
pub mod laddersim;
pub mod qstate;
pub mod strokes;

mod numeric;

pub use engine::{
    brute_force_optimum, brute_force_with, operating_region, optimal_multistroke,
    optimal_three_stroke, otto_optimal, reference_efficiencies, run_cycle, single_bath_wmax,
    BruteForceConfig, BruteForceOptimum, CycleTrace, EngineSpec, OptimalCycle, OttoOptimum,
    ReferenceEfficiencies, Regime, SingleBathExtraction, Stroke, StrokeLabel,
};
pub use error::{Error, Result};
pub use fluct::{
    correlated_distribution, moments, uncorrelated_distribution, CorrelatedComparison, Moments,
    UncorrelatedComparison, UncorrelatedParams, WalkParams,
};
pub use laddersim::{
    apply_t_map, battery_distribution, evolve_cycles, stationary_state, BatteryDistribution,
    Evolution, JointLadderState, StationaryState,
};
pub use qstate::{BathParams, ControlMarginalState, ScalarFunctionals};
pub use strokes::{
    delta_r_max, extraction_thresholds, gamma_max, max_ergotropy_storing, thermal_stroke,
    work_stroke, ExtractionThresholds, StrokeOutcome, ThermalStrokeParams, WorkStrokeParams,
};
