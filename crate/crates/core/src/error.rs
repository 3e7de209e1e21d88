use thiserror::Error;

use crate::term::{Constructor, SignatureId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the numeral 0 needs the constant 0, which {0} does not have")]
    ZeroNotInSignature(SignatureId),

    #[error("`{constructor}` is not part of signature {sig}")]
    NotInSignature {
        sig: SignatureId,
        constructor: Constructor,
    },

    #[error("term contains a multiplicative inverse")]
    ContainsInverse,

    #[error("term is not closed; free variables: {0}")]
    NotClosed(String),

    #[error("polynomial exceeds the monomial limit of {limit}")]
    SizeLimit { limit: usize },

    #[error("carrier violation: {0}")]
    CarrierViolation(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("term mixes inverse and division")]
    MixedSignature,

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error: {0}")]
    Schema(String),
}
