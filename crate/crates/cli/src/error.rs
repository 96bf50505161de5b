use thiserror::Error;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] psd_approx::Error),
}

impl CliError {
    /// Adapter for `map_err` on I/O results.
    pub fn io(path: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |e| CliError::Io {
            path,
            msg: e.to_string(),
        }
    }

    /// `1` for I/O, `3` for numerical failures, `2` for invalid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}
