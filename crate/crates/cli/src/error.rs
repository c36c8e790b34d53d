//! Error type for the harness: wraps core errors and adds file/input
//! context, and maps every failure to the process exit code contract
//! (0 success, 1 validation/input error, 2 numeric failure).

use std::fmt;

/// Harness error.
#[derive(Debug)]
pub enum CliError {
    /// Error propagated from the core library.
    Core(ipdt_core::Error),
    /// Bad user input outside the core validators (file contents, flag
    /// combinations, unknown names).
    Input(String),
    /// I/O failure, with the path involved.
    Io {
        /// Path the operation touched.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
}

impl CliError {
    /// Builds an input error from any displayable message.
    pub fn input(msg: impl fmt::Display) -> Self {
        Self::Input(msg.to_string())
    }

    /// Builds an I/O error with path context.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 1 for validation/input/I/O
    /// problems, 2 for numeric failures (degenerate tuning spec, simulation
    /// divergence).
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(e) if !e.is_validation() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Core(e) => e.fmt(f),
            Self::Input(msg) => f.write_str(msg),
            Self::Io { path, source } => write!(f, "{path}: {source}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Core(e) => Some(e),
            Self::Input(_) => None,
            Self::Io { source, .. } => Some(source),
        }
    }
}

impl From<ipdt_core::Error> for CliError {
    fn from(e: ipdt_core::Error) -> Self {
        Self::Core(e)
    }
}

/// Result alias for harness operations.
pub type CliResult<T> = Result<T, CliError>;
