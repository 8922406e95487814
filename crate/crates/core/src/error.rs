//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("window is empty or invalid: {0}")]
    InvalidWindow(String),

    #[error("region is empty or invalid: {0}")]
    InvalidRegion(String),

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("point {0} is not in the model set")]
    NotInModelSet(String),

    #[error("window has no interior at the requested point (slack {0})")]
    NoInteriorSlack(String),

    #[error("region {region} is not covered by the enumerated region {enumerated} with margin {margin}")]
    MarginTooSmall {
        region: String,
        enumerated: String,
        margin: String,
    },

    #[error("region mismatch: {0}")]
    RegionMismatch(String),

    #[error("guard exceeded: {what} (limit {limit})")]
    GuardExceeded { what: String, limit: String },

    #[error("search region contains no admissible difference; widen the region")]
    NoDifferenceFound,

    #[error("coloring scheme does not fit this point set: {0}")]
    SchemeMismatch(String),

    #[error("ball at {center} with radius {radius} is not covered by the point set region")]
    BallNotCovered { center: String, radius: String },

    #[error("physical projection is not injective on the enumerated region: lattice points {0} and {1} collide")]
    ProjectionNotInjective(String, String),

    #[error("precision of {digits} digits is insufficient for n = {n}; need at least {needed}")]
    PrecisionInsufficient { digits: u32, n: u32, needed: u32 },

    #[error("difference set is not locally finite at scale {0}; finite-local-complexity check failed")]
    FlcCheckFailed(f64),

    #[error("exact coordinates required but absent: {0}")]
    ExactCoordsRequired(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cover construction exceeded {limit} translates; not a valid cover at this scale")]
    CoverGuardExceeded { limit: usize },

    #[error("certificate check failed: {0}")]
    CertificateFailed(String),
}

impl Error {
    /// Process exit code convention: 2 for precondition/config failures,
    /// 3 when a size or search guard was exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GuardExceeded { .. } | Error::CoverGuardExceeded { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
