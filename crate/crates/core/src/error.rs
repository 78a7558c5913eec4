//! Error type shared across the kernel and the higher-level modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("rewrite fuel exhausted (limit {0} steps)")]
    FuelExhausted(u64),

    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("algebra mismatch: `{0}` vs `{1}`")]
    AlgebraMismatch(String, String),

    #[error("analytic function applied to a series with a nonzero h^0 part")]
    NonNilpotentArgument,

    #[error("exact series division failed: nonzero remainder at h^{order}")]
    NotDivisible { order: u32 },

    #[error("series division needs a commutative subring; `{0}` and `{1}` do not commute")]
    NonCommutativeInput(String, String),

    #[error("division by the zero series")]
    DivisionByZero,

    #[error("negative h exponent produced by shift")]
    NegativeHExponent,

    #[error("represented exponent is not nilpotent")]
    NonNilpotentExponent,

    #[error("representation violates relation [{0}, {1}]")]
    RelationViolated(String, String),

    #[error("no (delta - delta') generating element is known for this R matrix")]
    NoSuchForm,

    #[error("contraction limit is not well defined ({0} entries with negative eps exponents)")]
    NonContractible(usize),

    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
