use thiserror::Error;

/// Errors raised by the model operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension l={0}; expected 3, 4 or 5")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: l={0} vs l={1}")]
    DimensionMismatch(usize, usize),
    #[error("wrong number of components: expected {expected}, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("not on quadric: Q(v,v) = {0}")]
    NotOnQuadric(f64),
    #[error("root label ({alpha},{beta}) is not available for l={l}")]
    InvalidRootLabel { alpha: i8, beta: i8, l: usize },
    #[error("direction is not a unit vector (|w| = {0})")]
    NonUnitDirection(f64),
    #[error("vector is not tangent at the point (Q(p,X) = {0})")]
    NotTangent(f64),
    #[error("point lies on the singularity")]
    Singular,
    #[error("horizon case; special representative not defined")]
    HorizonCase,
    #[error("special representative mode needs {0}")]
    WrongRegime(&'static str),
    #[error("degenerate denominator {0}; use other branch")]
    UseOtherBranch(f64),
    #[error("no representative satisfying the constraint after {0} retries")]
    RepresentativeExhausted(u32),
    #[error("matrix is not unimodular: det = {0}")]
    NotUnimodular(f64),
    #[error("matrix is not a valid {kind} element (residual {residual:e})")]
    InvalidElement { kind: &'static str, residual: f64 },
}
