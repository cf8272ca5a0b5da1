use occupation_core::{Error as CoreError, Rejection};

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("no session with id {0}")]
    UnknownSession(String),
    #[error("the game is over")]
    Finished,
    #[error("it is not the human's turn")]
    OutOfTurn,
    #[error("inadmissible move: {0}")]
    Inadmissible(Rejection),
    #[error("invalid game parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed request: {0}")]
    Malformed(String),
    #[error(transparent)]
    Engine(CoreError),
}

impl ServiceError {
    /// Stable machine-readable code for the `error` field of responses.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::UnknownSession(_) => "unknown_session",
            ServiceError::Finished => "finished",
            ServiceError::OutOfTurn => "out_of_turn",
            ServiceError::Inadmissible(_) => "inadmissible",
            ServiceError::InvalidParameters(_) => "invalid_parameters",
            ServiceError::Malformed(_) => "malformed",
            ServiceError::Engine(_) => "internal",
        }
    }
}

impl From<Rejection> for ServiceError {
    fn from(r: Rejection) -> Self {
        ServiceError::Inadmissible(r)
    }
}

impl From<CoreError> for ServiceError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Inadmissible(r) => ServiceError::Inadmissible(r),
            other => ServiceError::Engine(other),
        }
    }
}
