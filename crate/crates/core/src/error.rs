use thiserror::Error;

/// Failures of the categorical operations.
///
/// Every variant has a stable kebab-case [`Error::name`] that the command
/// line prints on its diagnostic stream.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mismatched boundary: {0}")]
    MismatchedBoundary(String),
    #[error("cocone does not commute: {0}")]
    NonCommutingCocone(String),
    #[error("merged edges carry different labels: {0}")]
    LabelConflict(String),
    #[error("merged transitions carry different rates: {0}")]
    RateConflict(String),
    #[error("morphism is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("resistance must be positive, got {0}")]
    NonpositiveResistance(String),
    #[error("rate must be positive, got {0}")]
    NonpositiveRate(String),
    #[error("ill-typed composite: {0}")]
    IllTypedCompose(String),
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
    #[error("index out of range at {path}: {message}")]
    IndexOutOfRange { path: String, message: String },
    #[error("duplicate name {name:?} at {path}")]
    DuplicateName { path: String, name: String },
    #[error("instance mismatch: {0}")]
    InstanceMismatch(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::MismatchedBoundary(_) => "mismatched-boundary",
            Error::NonCommutingCocone(_) => "non-commuting-cocone",
            Error::LabelConflict(_) => "label-conflict",
            Error::RateConflict(_) => "rate-conflict",
            Error::NotInvertible(_) => "not-invertible",
            Error::InvalidMorphism(_) => "invalid-morphism",
            Error::InvalidObject(_) => "invalid-object",
            Error::NonpositiveResistance(_) => "nonpositive-resistance",
            Error::NonpositiveRate(_) => "nonpositive-rate",
            Error::IllTypedCompose(_) => "ill-typed-compose",
            Error::MalformedJson(_) => "malformed-json",
            Error::SchemaViolation { .. } => "schema-violation",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::DuplicateName { .. } => "duplicate-name",
            Error::InstanceMismatch(_) => "instance-mismatch",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
