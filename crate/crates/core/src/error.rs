use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("composition {left} ∘ {right} is undefined: domain of {left} is not the codomain of {right}")]
    CompositionUndefined { left: String, right: String },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("not a based ring: coefficient {coefficient} of {target} in {left} ∘ {right}")]
    NotBasedRing {
        left: String,
        right: String,
        target: String,
        coefficient: i64,
    },

    #[error("category has no involution")]
    MissingInvolution,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("different underlying categories")]
    CategoryMismatch,

    #[error("search space of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("stage {stage} failed: {message}")]
    Stage { stage: u8, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn stage(stage: u8, msg: impl Into<String>) -> Self {
        Error::Stage {
            stage,
            message: msg.into(),
        }
    }
}
