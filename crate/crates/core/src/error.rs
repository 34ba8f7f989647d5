use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    /// Broken regime without a real metric: needs `c1^2 > kappa^2 - g^2`.
    #[error("reality condition violated: c1^2 = {c1_sq} must exceed kappa^2 - g^2 = {threshold}")]
    RealityConditionViolated { c1_sq: f64, threshold: f64 },

    #[error("not in the broken regime: g^2 - kappa^2 = {discriminant} is not negative")]
    NotBrokenRegime { discriminant: f64 },

    #[error("closed-form asymptote assumes gamma = pi/4, got {gamma}")]
    NonMaximalInitialState { gamma: f64 },

    #[error("state {index} is not normalized (norm^2 = {norm_sq})")]
    NonNormalizedState { index: usize, norm_sq: f64 },

    #[error("invalid ensemble weights: {reason}")]
    InvalidWeights { reason: &'static str },

    #[error("Dyson map is singular or ill-conditioned (condition number {condition:e})")]
    SingularEta { condition: f64 },

    #[error("bipartition does not match the basis: {reason}")]
    LabelMismatch { reason: &'static str },

    #[error("not a density matrix: {reason} ({value:e})")]
    NotADensityMatrix { reason: &'static str, value: f64 },

    #[error("unsupported Fock truncation max_total = {max_total} (allowed: 1, 2)")]
    UnsupportedTruncation { max_total: usize },

    #[error("RK4 step dt = {dt} too large: first-integral drift {drift:e}")]
    StepSizeTooLarge { dt: f64, drift: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::RealityConditionViolated { .. } => "RealityConditionViolated",
            Error::NotBrokenRegime { .. } => "NotBrokenRegime",
            Error::NonMaximalInitialState { .. } => "NonMaximalInitialState",
            Error::NonNormalizedState { .. } => "NonNormalizedState",
            Error::InvalidWeights { .. } => "InvalidWeights",
            Error::SingularEta { .. } => "SingularEta",
            Error::LabelMismatch { .. } => "LabelMismatch",
            Error::NotADensityMatrix { .. } => "NotADensityMatrix",
            Error::UnsupportedTruncation { .. } => "UnsupportedTruncation",
            Error::StepSizeTooLarge { .. } => "StepSizeTooLarge",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}
