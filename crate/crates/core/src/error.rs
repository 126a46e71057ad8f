use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("group of order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("size {size} exceeds the supported maximum of {max}")]
    SizeTooLarge { size: usize, max: usize },
    #[error("congruence closure needs {needed} vectors, budget is {budget}")]
    ClosureBudgetExceeded { needed: usize, budget: usize },
    #[error("category is not semiadditive: {0}")]
    NotSemiadditive(String),
    #[error("composition is not bilinear: {0}")]
    CompositionNotBilinear(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("truncation not closed under composition: {0}")]
    NotClosed(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
}
