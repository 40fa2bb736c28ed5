//! Heat strokes, work strokes and the ergotropy-extraction bound.
//!
//! Sign conventions: a heat stroke reports `Q = E' − E` (energy entering the
//! working body is positive); a work stroke reports `W = E − E'` (energy
//! stored in the battery is positive).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::bisect_predicate;
use crate::qstate::{BathParams, ControlMarginalState};

/// Slack allowed on the coherence-damping bound.
pub const GAMMA_TOLERANCE: f64 = 1e-12;

/// Thermal operation on the qubit: mixture weight `λ` of the extremal process
/// and coherence damping `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalStrokeParams {
    lambda: f64,
    gamma: f64,
}

impl ThermalStrokeParams {
    pub fn new(lambda: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        if gamma.is_nan() || gamma < 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "gamma",
                value: gamma,
            });
        }
        Ok(Self { lambda, gamma })
    }

    /// `λ = 1`: full swap-like thermalisation, destroys coherence.
    pub fn extremal() -> Self {
        Self {
            lambda: 1.0,
            gamma: 0.0,
        }
    }

    pub fn identity() -> Self {
        Self {
            lambda: 0.0,
            gamma: 1.0,
        }
    }

    /// `λ` with the largest admissible damping factor for this bath.
    pub fn with_max_gamma(lambda: f64, bath: &BathParams) -> Result<Self> {
        let gamma = gamma_max(lambda, bath.weight())?;
        Self::new(lambda, gamma)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Rotation of the real Bloch vector `(α, z)` by angle `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkStrokeParams {
    theta: f64,
}

impl WorkStrokeParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !(-PI..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange(theta));
        }
        Ok(Self { theta })
    }

    /// The rotation that takes `state` to the passive point `(0, −r)`.
    pub fn max_storing_for(state: &ControlMarginalState) -> Self {
        let current = state.bloch_z().atan2(state.coherence());
        let mut theta = -0.5 * PI - current;
        if theta < -PI {
            theta += 2.0 * PI;
        }
        Self {
            theta: theta.clamp(-PI, PI),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrokeOutcome {
    pub state_after: ControlMarginalState,
    /// `Q` for heat strokes, `W` for work strokes.
    pub energy_flow: f64,
}

/// `sqrt((1 − λa)(1 − λ))`.
pub fn gamma_max(lambda: f64, weight: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::WeightOutOfRange(weight));
    }
    Ok(((1.0 - lambda * weight) * (1.0 - lambda)).max(0.0).sqrt())
}

/// `z' = z − λ[z(1 + a) + 1 − a]`, `α' = γα`.
pub fn thermal_stroke(
    state: &ControlMarginalState,
    bath: &BathParams,
    params: &ThermalStrokeParams,
) -> Result<StrokeOutcome> {
    check_gap(state, bath)?;
    let a = bath.weight();
    let bound = gamma_max(params.lambda, a)?;
    if params.gamma > bound + GAMMA_TOLERANCE {
        return Err(Error::GammaExceedsBound {
            gamma: params.gamma,
            bound,
        });
    }
    let z = state.bloch_z();
    let z_after = z - params.lambda * (z * (1.0 + a) + 1.0 - a);
    let after =
        ControlMarginalState::from_channel(z_after, params.gamma * state.coherence(), state.gap());
    Ok(StrokeOutcome {
        energy_flow: after.energy() - state.energy(),
        state_after: after,
    })
}

/// Planar rotation `(α', z') = R(θ)(α, z)`; the sign of `α'` is dropped.
pub fn work_stroke(state: &ControlMarginalState, params: &WorkStrokeParams) -> StrokeOutcome {
    let (sin, cos) = params.theta.sin_cos();
    let alpha = state.coherence();
    let z = state.bloch_z();
    let alpha_after = alpha * cos - z * sin;
    let z_after = alpha * sin + z * cos;
    let after = ControlMarginalState::from_channel(z_after, alpha_after, state.gap());
    StrokeOutcome {
        energy_flow: state.energy() - after.energy(),
        state_after: after,
    }
}

/// Stores the whole ergotropy: the state ends at `(α, z) = (0, −r)`.
pub fn max_ergotropy_storing(state: &ControlMarginalState) -> StrokeOutcome {
    let r = state.bloch_radius();
    let after = ControlMarginalState::from_channel(-r, 0.0, state.gap());
    StrokeOutcome {
        state_after: after,
        energy_flow: state.ergotropy(),
    }
}

/// Largest ergotropy gain of a single heat stroke,
/// `max[2(ω − E)a − ω − R, 0]`.
pub fn delta_r_max(state: &ControlMarginalState, bath: &BathParams) -> f64 {
    let w = state.gap();
    let value = 2.0 * (w - state.energy()) * bath.weight() - w - state.ergotropy();
    value.max(0.0)
}

fn check_gap(state: &ControlMarginalState, bath: &BathParams) -> Result<()> {
    let (s, b) = (state.gap(), bath.gap());
    if (s - b).abs() > 1e-12 * s.max(b) {
        return Err(Error::GapMismatch { bath: b, state: s });
    }
    Ok(())
}

/// Ergotropy change (ω = 1) of the stroke `(λ, γ_max(λ))` on the Bloch state
/// `(z, α)` with bath weight `a`.
pub fn delta_r_extremal_gamma(lambda: f64, z: f64, alpha: f64, a: f64) -> f64 {
    let h = extraction_drive(z, a);
    let z_after = z + lambda * h;
    let alpha_after = ((1.0 - lambda * a) * (1.0 - lambda)).max(0.0).sqrt() * alpha;
    let r_after = z_after.hypot(alpha_after);
    let r = z.hypot(alpha);
    0.5 * ((z_after + r_after) - (z + r))
}

/// `h = −z(1 + a) − 1 + a`, so that `z' = z + λh`.
pub fn extraction_drive(z: f64, a: f64) -> f64 {
    -z * (1.0 + a) - 1.0 + a
}

/// Thresholds for positive ergotropy extraction from a state with Bloch
/// coordinate `z` and coherence `α² = B(1 − z²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionThresholds {
    /// Smallest `λ` above which the stroke extracts ergotropy, by bisection.
    pub lambda0_numeric: Option<f64>,
    /// `1 + (r − z − 2h)/(a(r − z))`, or `−z/h` for diagonal states.
    pub lambda0_closed: f64,
    /// Largest `z` that still admits extraction at `λ = 1`, by bisection.
    pub z0_numeric: Option<f64>,
    /// The closed-form threshold expression in `(a, B)`.
    pub z0_closed: f64,
    /// `−(1 − a)/a`, the diagonal (`B = 0`) value of the threshold.
    pub z0_diagonal: f64,
    /// Set when the closed-form `z0` disagrees with the bisection root.
    pub z0_discrepancy: bool,
    pub z_plus: f64,
    pub z_minus: f64,
}

/// Numeric `λ₀`: the transition of `ΔR(λ) > 0` on `[0, 1]`.
pub fn lambda0_numeric(a: f64, z: f64, alpha: f64) -> Result<f64> {
    let positive = |lambda: f64| delta_r_extremal_gamma(lambda, z, alpha, a) > 0.0;
    if !positive(1.0) {
        return Err(Error::NoPositiveExtraction);
    }
    // ΔR(0) = 0 exactly, so the search starts just inside the interval
    Ok(bisect_predicate(0.0, 1.0, positive))
}

/// Numeric `z₀(a, B)`: the largest `z` for which `λ₀(z) < 1`.
pub fn z0_numeric(a: f64, b: f64) -> Result<f64> {
    let extracts = |z: f64| {
        let alpha = (b * (1.0 - z * z)).max(0.0).sqrt();
        delta_r_extremal_gamma(1.0, z, alpha, a) > 0.0
    };
    if !extracts(-1.0) {
        return Err(Error::NoPositiveExtraction);
    }
    // predicate flipped: true below the threshold
    Ok(bisect_predicate(-1.0, 1.0, |z| !extracts(z)))
}

/// The convexity bounds `z±(a, B)` of `ΔR(λ)`.
pub fn convexity_bounds(a: f64, b: f64) -> (f64, f64) {
    let disc = ((2.0 - b).powi(2) * (1.0 + a * a) + 2.0 * a * (-b * b + 6.0 * b - 4.0))
        .max(0.0)
        .sqrt();
    let denom = 2.0 * a * (2.0 - b) + b * (1.0 + a * a);
    let z_plus = -(1.0 - a) * (2.0 + 2.0 * a + disc) / denom;
    let z_minus = -(1.0 - a) * (2.0 + 2.0 * a - disc) / denom;
    (z_plus, z_minus)
}

pub fn extraction_thresholds(a: f64, z: f64, b: f64) -> Result<ExtractionThresholds> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::WeightOutOfRange(a));
    }
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::ParameterOutOfRange { name: "z", value: z });
    }
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::ParameterOutOfRange { name: "B", value: b });
    }
    let alpha = (b * (1.0 - z * z)).max(0.0).sqrt();
    let r = z.hypot(alpha);
    let h = extraction_drive(z, a);
    let lambda0_closed = if alpha == 0.0 {
        -z / h
    } else {
        1.0 + (r - z - 2.0 * h) / (a * (r - z))
    };
    let z0_closed = -((1.0 - a) * (1.0 + 2.0 * a)
        - (4.0 * a * a + 4.0 * a * (3.0 * b - 2.0) + (2.0 - b).powi(2)).sqrt())
        / (2.0 * a * (1.0 + a) + 0.5 * b);
    let z0_numeric = z0_numeric(a, b).ok();
    let (z_plus, z_minus) = convexity_bounds(a, b);
    Ok(ExtractionThresholds {
        lambda0_numeric: lambda0_numeric(a, z, alpha).ok(),
        lambda0_closed,
        z0_numeric,
        z0_closed,
        z0_diagonal: -(1.0 - a) / a,
        z0_discrepancy: z0_numeric.is_none_or(|zn| (zn - z0_closed).abs() > 1e-9),
        z_plus,
        z_minus,
    })
}

/// Central second difference of `ΔR(λ)` at `γ = γ_max(λ)`.
pub fn delta_r_curvature(lambda: f64, z: f64, alpha: f64, a: f64) -> f64 {
    let step = 1e-4;
    let f = |l: f64| delta_r_extremal_gamma(l, z, alpha, a);
    (f(lambda + step) - 2.0 * f(lambda) + f(lambda - step)) / (step * step)
}
