//! Shared error type for all geometry and search operations. Display
//! messages carry the variant name so failures stay identifiable after
//! passing through serde or other string-typed layers.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("UnboundedBody: support in direction {0:?} exceeds the validation box")]
    UnboundedBody(Vec<f64>),

    #[error("InvalidDirection: {0}")]
    InvalidDirection(String),

    #[error("DimensionMismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("InvalidBody: {0}")]
    InvalidBody(String),

    #[error("RepresentationUnavailable: {0}")]
    RepresentationUnavailable(String),

    #[error("OriginNotInterior: origin not interior to the gauge body (margin {margin:.3e})")]
    OriginNotInterior { margin: f64 },

    #[error("RhoOutOfRange: rho {rho} outside (0, {max}]")]
    RhoOutOfRange { rho: f64, max: f64 },

    #[error("NonBracketing: {0}")]
    NonBracketing(String),

    #[error("CutMissesRegion: cut {index} misses the interior of its region")]
    CutMissesRegion { index: usize },

    #[error("TooManyHyperplanes: {0} (max {1})")]
    TooManyHyperplanes(usize, usize),

    #[error("DuplicateSites: indices {0} and {1}")]
    DuplicateSites(usize, usize),

    #[error("DegenerateHull: {0}")]
    DegenerateHull(String),

    #[error("NotACovering: uncovered witness {witness:?}")]
    NotACovering { witness: Vec<f64> },

    #[error("GenerationFailed: no valid instance after {0} retries")]
    GenerationFailed(usize),

    #[error("ViolationFound: {0}")]
    ViolationFound(String),

    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable name of the error variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnboundedBody(_) => "UnboundedBody",
            Error::InvalidDirection(_) => "InvalidDirection",
            Error::DimensionMismatch(_, _) => "DimensionMismatch",
            Error::InvalidBody(_) => "InvalidBody",
            Error::RepresentationUnavailable(_) => "RepresentationUnavailable",
            Error::OriginNotInterior { .. } => "OriginNotInterior",
            Error::RhoOutOfRange { .. } => "RhoOutOfRange",
            Error::NonBracketing(_) => "NonBracketing",
            Error::CutMissesRegion { .. } => "CutMissesRegion",
            Error::TooManyHyperplanes(_, _) => "TooManyHyperplanes",
            Error::DuplicateSites(_, _) => "DuplicateSites",
            Error::DegenerateHull(_) => "DegenerateHull",
            Error::NotACovering { .. } => "NotACovering",
            Error::GenerationFailed(_) => "GenerationFailed",
            Error::ViolationFound(_) => "ViolationFound",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
