use std::fmt;
use std::io;
use std::path::Path;

use zigzag_msr::Error;

pub const EXIT_IO: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_INSUFFICIENT: i32 = 3;
pub const EXIT_FORMAT: i32 = 4;
pub const EXIT_INVALID: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io {
        path: String,
        source: io::Error,
    },
    Manifest(String),
    Usage(String),
    /// Any of the above, tagged with the file it came from.
    Context {
        path: String,
        inner: Box<CliError>,
    },
    /// A check ran and found violations; the report has already been printed.
    VerifyFailed(usize),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn with_context(self, path: &Path) -> Self {
        CliError::Context {
            path: path.display().to_string(),
            inner: Box::new(self),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Context { inner, .. } => inner.exit_code(),
            CliError::Core(e) => match e {
                Error::InvalidParams(_)
                | Error::UnsupportedScale { .. }
                | Error::OutOfRange { .. } => EXIT_INVALID,
                Error::InsufficientData { .. }
                | Error::NodeUnavailable(_)
                | Error::DataLoss { .. } => EXIT_INSUFFICIENT,
                Error::Format(_)
                | Error::CrcMismatch { .. }
                | Error::Corruption(_)
                | Error::Inconsistent(_) => EXIT_FORMAT,
                _ => EXIT_IO,
            },
            CliError::Io { .. } => EXIT_IO,
            CliError::Manifest(_) => EXIT_FORMAT,
            CliError::Usage(_) => EXIT_INVALID,
            CliError::VerifyFailed(_) => EXIT_VERIFY_FAILED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Context { path, inner } => write!(f, "{path}: {inner}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Manifest(m) => write!(f, "bad manifest: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::VerifyFailed(n) => write!(f, "verification failed: {n} violations"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
