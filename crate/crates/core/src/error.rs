use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("defining polynomial is reducible over GF({0})")]
    NotIrreducible(u32),
    #[error("defining polynomial must be monic of degree {expected}, got {got:?}")]
    DegreeMismatch { expected: u32, got: alloc::vec::Vec<u32> },
    #[error("field too large: {0} elements (limit 2^20)")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element {0:?}")]
    BadElement(String),

    #[error("invalid semidirect action: {0}")]
    InvalidAction(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unknown group element label {0:?}")]
    UnknownLabel(String),

    #[error("Frobenius table is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("constacyclic cocycle needs a nonzero lambda")]
    ZeroLambda,
    #[error("value group is not cyclic")]
    NonCyclicValueGroup,
    #[error("group is not cyclic under its canonical enumeration")]
    NotCyclic,

    #[error("ring elements belong to different contexts")]
    ContextMismatch,
    #[error("isomorphism condition (a) violated: {0}")]
    ConditionAViolated(String),
    #[error("isomorphism condition (b) violated: {0}")]
    ConditionBViolated(String),
    #[error("recognition condition (c) violated: {0}")]
    ConditionCViolated(String),
    #[error("code is not stabilized by the supplied group")]
    NotStabilized,

    #[error("zero code has no minimum distance")]
    ZeroCode,
    #[error("enumeration too large: {0} codewords")]
    TooLarge(u128),
    #[error("Hermitian form needs a field of square order")]
    NotSquareField,
    #[error("Hermitian annihilator route needs alpha^q = alpha")]
    HermitianCocycleCondition,
    #[error("cocycle is not involutive (alpha != alpha^-1)")]
    CocycleNotInvolutive,
    #[error("characteristic divides the group order")]
    CharacteristicDividesOrder,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("row set is not a left ideal: {0}")]
    NotLeftIdeal(String),
    #[error("group closure exceeded {0} elements")]
    SizeCap(usize),
    #[error("no variant reproduces the expected parameters: {0}")]
    VariantResolutionFailed(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
}
