use alloc::string::String;

/// Errors raised by algebra, module and homological computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("coefficient {0} is not defined in the base field")]
    CoefficientNotInField(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("path {0} is not composable")]
    NonComposable(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("ideal is not admissible: nonzero paths survive past degree {0}")]
    NotAdmissible(usize),
    #[error("path algebra too large: more than {0} paths below the nilpotency degree")]
    TooLarge(usize),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("subspace is not closed under the arrow actions")]
    NotASubmodule,
    #[error("no splitting idempotent found within the search budget")]
    DecompositionFailed,
    #[error("zero module has no projective cover")]
    ZeroModule,
    #[error("resolution truncated at length {0}; the value lies beyond the cap")]
    Truncated(usize),
    #[error("Ext^1 vanishes, there is nothing to extend")]
    NothingToExtend,
    #[error("search exceeded its budget of {0} steps")]
    SearchBudgetExceeded(usize),
    #[error("algebra is not standardly stratified")]
    NotStratified,
    #[error("algebra is not properly stratified")]
    NotProperlyStratified,
    #[error("tilting construction did not terminate within {0} extension steps")]
    NonTerminating(usize),
    #[error("module does not embed into a power of the tilting module")]
    NoEmbedding,
    #[error("quiver presentation failed: {0}")]
    PresentationFailed(String),
    #[error("embedding is not multiplicative on basis pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("embedding does not send 1 to 1")]
    NotUnital,
    #[error("embedding is not injective")]
    NotInjective,
    #[error("embedding does not match vertex idempotents at vertex {0}")]
    IdempotentMismatch(usize),
    #[error("arrow map does not extend to an anti-automorphism: {0}")]
    NotAntiAutomorphism(String),
}

pub type Result<T> = core::result::Result<T, Error>;
