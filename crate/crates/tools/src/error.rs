use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] spanner_core::Error),
}

impl ToolError {
    /// 2 for anything the caller got wrong, 1 for failures of a valid run.
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Core(spanner_core::Error::GaveUp { .. }) => 1,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ToolError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type ToolResult<T> = std::result::Result<T, ToolError>;
