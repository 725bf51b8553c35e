use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("base category mismatch: {0}")]
    BaseMismatch(String),

    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),

    /// A map that was expected to factor through a computed (co)limit does not.
    #[error("factorization failure: {0}")]
    FactorizationFailure(String),

    /// A canonical construction failed on data that passed validation.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("not an association scheme: {0}")]
    NotAScheme(String),

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("pairing is not natural: {0}")]
    PairingNotNatural(String),

    #[error("wrong kernel shape: {0}")]
    WrongKernelShape(String),

    #[error("instance too large: {0}")]
    Oversized(String),

    #[error("truncation overflow: requested degree {requested} exceeds truncation {truncation}")]
    TruncationOverflow { requested: usize, truncation: usize },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
}
