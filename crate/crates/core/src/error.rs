use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quiver has a directed cycle through vertex {0}")]
    CyclicQuiver(usize),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("object is not exceptional: {0}")]
    NotExceptional(String),
    #[error("object is not rigid: {0}")]
    NotRigid(String),
    #[error("object is not presilting: {0}")]
    NotPresilting(String),
    #[error("object is not silting: {0}")]
    NotSilting(String),
    #[error("not a summand: {0}")]
    NotASummand(String),
    #[error("collection is not a pre-simple-minded collection: {0}")]
    NotPreSmc(String),
    #[error("non-integral Ext-quiver multiplicity between {0} and {1}")]
    NonIntegralMultiplicity(usize, usize),
    #[error("reduction set is not contained in the collection: {0}")]
    NotContained(String),
    #[error("quiver is not a linearly labelled orientation of A_n: {0}")]
    NotTypeA(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
