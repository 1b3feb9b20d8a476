use thiserror::Error;

/// Failures of the scalar/polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is not bound at the evaluation point")]
    UnboundVariable(String),
    #[error("negative power of `{0}` evaluated at zero")]
    PoleAtPoint(String),
    #[error("`{0}` carries a negative exponent but its image is not a single nonzero term")]
    NonInvertibleImage(String),
    #[error("negative exponent on `{0}`, which is not the fiber variable")]
    NegativeExponentOffFiber(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("mixed fiber variables: `{0}` vs `{1}`")]
    FiberMismatch(String, String),
}

/// Any failure of the kernel, for callers that do not care which layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    RootSystem(#[from] crate::rootsys::RootSystemError),
    #[error(transparent)]
    Lie(#[from] crate::liealg::LieError),
    #[error(transparent)]
    Exterior(#[from] crate::exterior::ExteriorError),
    #[error(transparent)]
    Contact(#[from] crate::contact::ContactError),
    #[error(transparent)]
    Adjoint(#[from] crate::adjoint::AdjointError),
}
