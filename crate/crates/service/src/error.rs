use thiserror::Error;

pub type ServiceResult<T> = Result<T, ServiceError>;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error(transparent)]
    Core(#[from] mastermind_core::Error),

    #[error("{0}")]
    Validation(String),

    #[error("no game with id {0}")]
    NotFound(String),

    #[error("game {0} is already finished")]
    Finished(String),

    #[error("journal: {0}")]
    Journal(#[from] std::io::Error),
}

impl ServiceError {
    /// Short machine-readable class used in error bodies.
    pub fn kind(&self) -> &'static str {
        match self {
            ServiceError::Core(mastermind_core::Error::BudgetExceeded { .. }) => "budget",
            ServiceError::Core(_) | ServiceError::Validation(_) => "validation",
            ServiceError::NotFound(_) => "not-found",
            ServiceError::Finished(_) => "finished",
            ServiceError::Journal(_) => "internal",
        }
    }
}
