use thiserror::Error;

/// Errors raised by the geometry, detectors and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("box half-side must be at least 1 (got {0})")]
    EmptyBox(u32),
    #[error("box half-side {0} overflows the edge index space")]
    BoxTooLarge(u32),
    #[error("density {0} is outside [0, 1]")]
    InvalidDensity(f64),
    #[error("edge index {0} is out of range")]
    InvalidEdge(usize),
    #[error("state vector has {got} entries, geometry needs {expected}")]
    StateLength { expected: usize, got: usize },
    #[error("invalid annulus: inner radius {inner} must be below outer radius {outer}")]
    InvalidAnnulus { inner: u32, outer: u32 },
    #[error("region does not fit inside the box of half-side {n}")]
    OutsideBox { n: u32 },
    #[error("region mask selects no sites")]
    EmptyMask,
    #[error("no horizontal open crossing exists")]
    NoCrossing,
    #[error("no qualifying open arc between the five-arm points")]
    NoArc,
    #[error("malformed target set: {0}")]
    MalformedTargets(&'static str),
    #[error("invalid arm specification: {0}")]
    InvalidArmSpec(&'static str),
    #[error("plan does not match host path: {0}")]
    PlanMismatch(&'static str),
    #[error("conditioning event observed {accepted} times in {attempts} attempts; insufficient conditioning mass")]
    InsufficientConditioning { accepted: usize, attempts: usize },
    #[error("degenerate estimates: {0}")]
    Degenerate(String),
    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),
}

pub type Result<T> = std::result::Result<T, Error>;
