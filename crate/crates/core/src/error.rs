use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("energy fraction {0} is outside [0, 1]")]
    EnergyOutOfRange(f64),
    #[error("coherence {0} is negative")]
    NegativeCoherence(f64),
    #[error("Bloch radius {0} exceeds 1, state is not positive")]
    NotPositive(f64),
    #[error("energy gap {0} must be positive and finite")]
    NonPositiveGap(f64),
    #[error("inverse temperature {0} must be non-negative")]
    NegativeInverseTemperature(f64),
    #[error("free energy undefined at infinite temperature (beta = 0)")]
    InfiniteTemperature,
    #[error("bath gap {bath} does not match working-body gap {state}")]
    GapMismatch { bath: f64, state: f64 },
    #[error("Boltzmann weight {0} is outside (0, 1]")]
    WeightOutOfRange(f64),
    #[error("mixing weight lambda = {0} is outside [0, 1]")]
    LambdaOutOfRange(f64),
    #[error("coherence damping gamma = {gamma} exceeds the admissible bound {bound}")]
    GammaExceedsBound { gamma: f64, bound: f64 },
    #[error("rotation angle {0} is outside [-pi, pi]")]
    AngleOutOfRange(f64),
    #[error("{name} = {value} is outside its admissible range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("no positive ergotropy extraction possible")]
    NoPositiveExtraction,
    #[error("stroke count must be at least 1")]
    NoStrokes,
    #[error(
        "no positive-efficiency engine exists: exp(n betaH w) + exp(-betaC w) = {boundary_sum} >= 2 (n = {n_strokes})"
    )]
    OutsideOperatingRegion { boundary_sum: f64, n_strokes: u32 },
    #[error("no closed positive-work cycle on grid")]
    EmptyFeasibleSet,
    #[error("grid resolution {0} must lie in (0, 0.1]")]
    InvalidResolution(f64),
    #[error("reference efficiencies need betaC > betaH > 0 (got betaH = {beta_h}, betaC = {beta_c})")]
    TemperatureOrder { beta_h: f64, beta_c: f64 },
    #[error("Otto efficiency {eta} exceeds the Carnot bound {carnot}")]
    BeyondCarnot { eta: f64, carnot: f64 },
    #[error("battery window overflow: need half-width {needed}, have {available}; enlarge the window")]
    WindowOverflow { needed: usize, available: usize },
    #[error("distribution is not normalized (total mass {0})")]
    Unnormalized(f64),
}
