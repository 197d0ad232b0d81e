use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("linear form has all coefficients zero")]
    ZeroForm,
    #[error("hyperplane index {index} out of range (arrangement has {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("the zero element is not a unit")]
    ZeroUnit,
    #[error("elements belong to different arrangements")]
    MixedArrangement,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("arrangement is not normal crossing at infinity")]
    NotNormalCrossing,
    #[error("invalid field descriptor `{0}`")]
    InvalidField(String),
    #[error("scalar `{0}` is outside the supported range for factorisation")]
    ScalarTooLarge(String),
    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::PreconditionViolated(message.into())
    }
}
