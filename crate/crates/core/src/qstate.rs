//! Two-level control-marginal state and its scalar thermodynamic functionals.
//!
//! A state is stored as `(E_S/ω, α, ω)`: the excited-state population, the
//! magnitude of the (real) off-diagonal element and the qubit gap. The Bloch
//! coordinates follow as `z = 2E_S/ω − 1` and `r = sqrt(z² + α²)`; positivity
//! of the density matrix is `r ≤ 1`.

use crate::error::{Error, Result};

/// Overshoot of the Bloch radius (and of the energy fraction) tolerated and
/// clamped back onto the physical boundary.
pub const RADIUS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlMarginalState {
    energy_fraction: f64,
    coherence: f64,
    gap: f64,
}

/// Energy, ergotropy, passive energy, entropy and free energy of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarFunctionals {
    pub energy: f64,
    pub ergotropy: f64,
    pub passive_energy: f64,
    pub entropy: f64,
    pub free_energy: f64,
}

fn check_gap(gap: f64) -> Result<()> {
    if gap > 0.0 && gap.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveGap(gap))
    }
}

impl ControlMarginalState {
    /// Validated state from the excited population `E_S/ω`, the coherence
    /// magnitude `α` and the gap `ω`.
    pub fn new(energy_fraction: f64, coherence: f64, gap: f64) -> Result<Self> {
        check_gap(gap)?;
        if !(-RADIUS_TOLERANCE..=1.0 + RADIUS_TOLERANCE).contains(&energy_fraction) {
            return Err(Error::EnergyOutOfRange(energy_fraction));
        }
        if coherence.is_nan() || coherence < 0.0 {
            return Err(Error::NegativeCoherence(coherence));
        }
        let energy_fraction = energy_fraction.clamp(0.0, 1.0);
        let z = 2.0 * energy_fraction - 1.0;
        let r = z.hypot(coherence);
        if r > 1.0 + RADIUS_TOLERANCE {
            return Err(Error::NotPositive(r));
        }
        let coherence = if r > 1.0 {
            (1.0 - z * z).max(0.0).sqrt()
        } else {
            coherence
        };
        Ok(Self {
            energy_fraction,
            coherence,
            gap,
        })
    }

    /// Validated state from Bloch coordinates `(z, α)`.
    pub fn from_bloch(z: f64, coherence: f64, gap: f64) -> Result<Self> {
        Self::new(0.5 * (1.0 + z), coherence, gap)
    }

    /// Builds a state from coordinates produced by a physical channel; these
    /// satisfy `r ≤ 1` up to rounding, which is clamped.
    pub(crate) fn from_channel(z: f64, coherence: f64, gap: f64) -> Self {
        let z = z.clamp(-1.0, 1.0);
        let coherence = coherence.abs().min((1.0 - z * z).max(0.0).sqrt());
        Self {
            energy_fraction: 0.5 * (1.0 + z),
            coherence,
            gap,
        }
    }

    pub fn ground(gap: f64) -> Result<Self> {
        Self::new(0.0, 0.0, gap)
    }

    pub fn excited(gap: f64) -> Result<Self> {
        Self::new(1.0, 0.0, gap)
    }

    pub fn diagonal(energy_fraction: f64, gap: f64) -> Result<Self> {
        Self::new(energy_fraction, 0.0, gap)
    }

    /// Thermal state of the qubit at the bath temperature.
    pub fn gibbs(bath: &BathParams) -> Self {
        let a = bath.weight();
        Self {
            energy_fraction: a / (1.0 + a),
            coherence: 0.0,
            gap: bath.gap(),
        }
    }

    pub fn energy_fraction(&self) -> f64 {
        self.energy_fraction
    }

    /// Mean energy `E_S` in units of the gap's energy unit.
    pub fn energy(&self) -> f64 {
        self.energy_fraction * self.gap
    }

    pub fn coherence(&self) -> f64 {
        self.coherence
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn bloch_z(&self) -> f64 {
        2.0 * self.energy_fraction - 1.0
    }

    pub fn bloch_radius(&self) -> f64 {
        self.bloch_z().hypot(self.coherence)
    }

    /// Eigenvalues `(1 + r)/2 ≥ (1 − r)/2`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = self.bloch_radius();
        (0.5 * (1.0 + r), 0.5 * (1.0 - r))
    }

    /// `R_S = (ω/2)(z + r)`.
    pub fn ergotropy(&self) -> f64 {
        let z = self.bloch_z();
        let r = self.bloch_radius();
        // z + r without cancellation when z < 0
        let z_plus_r = if z >= 0.0 {
            z + r
        } else if r - z > 0.0 {
            self.coherence * self.coherence / (r - z)
        } else {
            0.0
        };
        0.5 * self.gap * z_plus_r.max(0.0)
    }

    /// `P_S = E_S − R_S`.
    pub fn passive_energy(&self) -> f64 {
        self.energy() - self.ergotropy()
    }

    /// Von Neumann entropy in nats.
    pub fn entropy(&self) -> f64 {
        let (hi, lo) = self.eigenvalues();
        xlnx(hi) + xlnx(lo)
    }

    /// `F_S = E_S − S_S/β`; undefined at `β = 0`.
    pub fn free_energy(&self, beta: f64) -> Result<f64> {
        if beta.is_nan() || beta < 0.0 {
            return Err(Error::NegativeInverseTemperature(beta));
        }
        if beta == 0.0 {
            return Err(Error::InfiniteTemperature);
        }
        Ok(self.energy() - self.entropy() / beta)
    }

    pub fn functionals(&self, beta: f64) -> Result<ScalarFunctionals> {
        let ergotropy = self.ergotropy();
        let energy = self.energy();
        Ok(ScalarFunctionals {
            energy,
            ergotropy,
            passive_energy: energy - ergotropy,
            entropy: self.entropy(),
            free_energy: self.free_energy(beta)?,
        })
    }
}

fn xlnx(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// A heat bath at inverse temperature `β` acting on a qubit of gap `ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    beta: f64,
    gap: f64,
}

impl BathParams {
    /// `β` may be `+∞` (zero-temperature bath).
    pub fn new(beta: f64, gap: f64) -> Result<Self> {
        check_gap(gap)?;
        if beta.is_nan() || beta < 0.0 {
            return Err(Error::NegativeInverseTemperature(beta));
        }
        Ok(Self { beta, gap })
    }

    /// Bath specified by its Boltzmann weight `a = exp(−βω)`.
    pub fn from_weight(weight: f64, gap: f64) -> Result<Self> {
        if !(weight > 0.0 && weight <= 1.0) {
            return Err(Error::WeightOutOfRange(weight));
        }
        Self::new(-weight.ln() / gap, gap)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// Dimensionless product `βω`.
    pub fn beta_gap(&self) -> f64 {
        self.beta * self.gap
    }

    /// Boltzmann weight `a = exp(−βω)`.
    pub fn weight(&self) -> f64 {
        (-self.beta * self.gap).exp()
    }

    /// Free energy of the bath's own Gibbs state, `−ln(1 + a)/β`.
    pub fn gibbs_free_energy(&self) -> Result<f64> {
        if self.beta == 0.0 {
            return Err(Error::InfiniteTemperature);
        }
        Ok(-(1.0 + self.weight()).ln() / self.beta)
    }
}
