use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("spanning set of the smaller space is not contained in the larger one")]
    NotASubspace,
    #[error("invalid degree: {0}")]
    Degree(String),
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("height {height:?} needs a negative power of {map}, which is not invertible")]
    NegativeHeight { map: &'static str, height: (i64, i64) },
    #[error("incompatible heights: {0}")]
    Height(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
