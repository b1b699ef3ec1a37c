use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("unknown thing `{0}`")]
    UnknownThing(String),

    #[error("payload mismatch: {0}")]
    PayloadMismatch(String),

    #[error("universe has {size} things, exceeding the cap of {cap}")]
    UniverseTooLarge { size: usize, cap: usize },

    #[error("closure laws have not been verified for this operator")]
    LawsUnverified,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("wrong payload kind: {0}")]
    WrongPayload(String),

    #[error("representer set must be non-empty")]
    EmptyRepresenterSet,

    #[error("set of desirable sets is not coherent: {0}")]
    NotCoherent(String),

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("unknown operator seed `{0}`")]
    UnknownSeed(String),

    #[error("wrong universe: {0}")]
    WrongUniverse(String),
}
