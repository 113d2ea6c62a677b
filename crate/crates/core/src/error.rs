use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised while building or combining evidence.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a frame needs at least one element")]
    EmptyFrame,
    #[error("duplicate element label '{0}'")]
    DuplicateLabel(String),
    #[error("malformed element label '{0}'")]
    MalformedLabel(String),
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("element index {index} is out of range for a frame of {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("operands are defined over different frames")]
    FrameMismatch,
    #[error("the empty event has no element set")]
    EmptyProjection,
    #[error("enumeration depth must be at least 1")]
    ZeroDepth,

    #[error("the empty event or set cannot carry mass")]
    EmptyFocal,
    #[error("duplicate focal element {0}")]
    DuplicateFocal(String),
    #[error("mass {mass} assigned to {focal} is outside (0, 1]")]
    MassOutOfRange { focal: String, mass: f64 },
    #[error("masses sum to {total}, expected 1 within {tolerance:e}")]
    NotNormalized { total: f64, tolerance: f64 },

    /// Every pair of focal elements has an empty junction; normalization is undefined.
    /// `step` is 1-based: step 1 combines the first two operands of a chain.
    #[error("total conflict at combination step {step}")]
    TotalConflict { step: usize },
    #[error("nothing to combine")]
    NoSources,
    #[error("expected {expected} combination rules, found {found}")]
    RuleCountMismatch { expected: usize, found: usize },

    #[error("an expert panel needs at least one expert")]
    EmptyPanel,
    #[error("duplicate source '{0}'")]
    DuplicateSource(String),
    #[error("duplicate expert '{0}'")]
    DuplicateExpert(String),
    #[error("total conflict in the ordering led by '{expert}' at combination step {step}")]
    OrderingConflict { expert: String, step: usize },
}
