use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("malformed field spec: {0}")]
    MalformedSpec(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("homogeneous coordinates are all zero")]
    ZeroVector,
    #[error("points coincide; they do not span a line")]
    CoincidentPoints,
    #[error("parameters (0,0) do not determine a generator")]
    ZeroParameters,
    #[error("point is not on the directrix g_inf")]
    NotOnGInf,
    #[error("point lies on g_inf")]
    PointOnGInf,
    #[error("point is not in the plane at infinity")]
    NotAtInfinity,
    #[error("point is not affine (x0 = 0)")]
    NotAffine,
    #[error("group matrix needs c != 0")]
    ZeroScale,
    #[error("matrix product left the group: {0}")]
    NotInGroup(String),
    #[error("the two tangency points coincide")]
    SamePoint,
    #[error("characteristic 3 is not supported here (3 is not invertible)")]
    Char3Unsupported,
    #[error("expected characteristic {expected}, got {found}")]
    WrongCharacteristic { expected: u64, found: FieldSpec },
    #[error("not a regulus: {0}")]
    NotARegulus(String),
    #[error("projection through C-perp is degenerate for this point")]
    ProjectionDegenerate,
    #[error("degree {0} outside the supported range")]
    DegreeOutOfRange(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
