use std::path::{Path, PathBuf};

/// Failure of a command, classified by exit status.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{}:{line}: {message}", path.display())]
    Config { path: PathBuf, line: usize, message: String },
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Internal(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config { .. } => 1,
            AppError::Data(_) => 2,
            AppError::Internal(_) => 3,
        }
    }

    pub fn config(path: &Path, line: usize, message: impl Into<String>) -> Self {
        AppError::Config { path: path.to_path_buf(), line, message: message.into() }
    }

    pub fn data(message: impl std::fmt::Display) -> Self {
        AppError::Data(message.to_string())
    }

    pub fn internal(message: impl std::fmt::Display) -> Self {
        AppError::Internal(message.to_string())
    }

    /// Failed write of an output artifact.
    pub fn write(path: &Path, err: impl std::fmt::Display) -> Self {
        AppError::Internal(format!("cannot write {}: {err}", path.display()))
    }
}

impl From<inkspace_core::Error> for AppError {
    fn from(e: inkspace_core::Error) -> Self {
        AppError::Data(e.to_string())
    }
}

pub type AppResult<T> = Result<T, AppError>;
