use thiserror::Error;

use crate::surface::BaseSurface;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible divisor classes: {left} vs {right}")]
    IncompatibleClasses {
        left: BaseSurface,
        right: BaseSurface,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("inconsistent building data: {0}")]
    InconsistentData(String),

    #[error("singularity configuration outside the supported rules: {0}")]
    UnsupportedConfiguration(String),

    #[error("invalid singularity type: {0}")]
    InvalidSingType(String),

    #[error("jet bound {0} too small")]
    JetBoundTooSmall(u32),

    #[error("possibly non-reduced or non-isolated singularity (no pure x-term below jet bound {0})")]
    NonIsolated(u32),

    #[error("point is not on the curve")]
    PointNotOnCurve,

    #[error("chart coordinate of the point is zero")]
    ZeroChartCoordinate,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("curve laboratory stage `{stage}` failed: {detail}")]
    Stage { stage: String, detail: String },

    #[error("unknown format `{0}`")]
    UnknownFormat(String),
}
