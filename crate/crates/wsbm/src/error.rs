//! Error type shared across the crate.
//!
//! Every failure carries enough context to act on without a backtrace.
//! [`Error::kind`] buckets errors for the CLI exit-code mapping: bad
//! arguments and malformed configuration are usage errors, filesystem
//! failures are I/O errors, and everything wrong with the numbers
//! themselves (unsupported weights, improper posteriors, malformed data
//! files) is a data error.

use crate::family::Family;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A weight lies outside the support of the chosen family.
    #[error("weight {value} at pair ({i}, {j}) is outside the support of the {family} family")]
    UnsupportedWeight {
        family: Family,
        value: f64,
        /// 1-based vertex ids, 0 when the weight did not come from a graph.
        i: usize,
        j: usize,
    },

    /// A natural-parameter vector violates the properness constraints of
    /// its family, so the log-partition integral diverges.
    #[error("improper parameter vector for the {family} family: {constraint}")]
    ImproperTau { family: Family, constraint: String },

    /// Caller-supplied arguments or configuration are invalid.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Data read from a file or produced by a computation is invalid.
    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Coarse classification used for CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Usage or configuration problem (exit code 2).
    Config,
    /// Filesystem problem (exit code 3).
    Io,
    /// Data or support validation problem (exit code 4).
    Data,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidInput(_) => ErrorKind::Config,
            Error::Io(_) => ErrorKind::Io,
            Error::UnsupportedWeight { .. } | Error::ImproperTau { .. } | Error::InvalidData(_) => {
                ErrorKind::Data
            }
        }
    }
}
