//! Command-line front end for `homodim`: sample point clouds, compute
//! persistence diagrams, estimate the embedding dimension, plot, and run the
//! whole chain from one config file.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 capacity exceeded,
//! 4 internal error.

use std::fmt;

pub mod cli;
pub mod commands;
pub mod config;
pub mod pipeline;
pub mod report;
pub mod svg;

pub use cli::{run, Cli};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

/// A command failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            error: anyhow::anyhow!("{msg}"),
        }
    }

    pub fn internal(err: impl Into<anyhow::Error>) -> Self {
        Self {
            code: EXIT_INTERNAL,
            error: err.into(),
        }
    }

    pub fn context(self, ctx: impl fmt::Display + Send + Sync + 'static) -> Self {
        Self {
            code: self.code,
            error: self.error.context(ctx),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<homodim::Error> for Failure {
    fn from(err: homodim::Error) -> Self {
        use homodim::Error as E;
        let code = match &err {
            E::CapacityExceeded { .. } => EXIT_CAPACITY,
            E::MalformedInput { .. }
            | E::InvalidSpec(_)
            | E::InvalidParams(_)
            | E::DegeneratePair { .. }
            | E::DegenerateInput(_)
            | E::Json(_) => EXIT_USAGE,
            E::MissingFace { .. } | E::IndexOutOfRange(_) | E::Overflow { .. } | E::Io(_) => {
                EXIT_INTERNAL
            }
        };
        Self {
            code,
            error: err.into(),
        }
    }
}

/// Reads an input file; a missing or unreadable input is a usage error.
pub(crate) fn read_input(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

/// Writes an output file; failures are internal errors.
pub(crate) fn write_output(path: &std::path::Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::internal(e).context(format!("creating {}", dir.display())))?;
    }
    std::fs::write(path, contents)
        .map_err(|e| Failure::internal(e).context(format!("writing {}", path.display())))
}
