//! Configuration-driven experiment runner around `reboot-core`.
//!
//! The library half of the CLI: config parsing and preset expansion
//! ([`config`]), the parallel episode runner with CSV/JSON output
//! ([`runner`]), the timing-table harness ([`bench`]), and the theory
//! report renderer ([`report`]).

pub mod bench;
pub mod config;
pub mod report;
pub mod runner;

use std::fmt;

/// CLI-level error carrying its process exit code: configuration problems
/// exit 2, I/O problems exit 3.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(msg) => write!(f, "configuration error: {msg}"),
            Self::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<reboot_core::Error> for CliError {
    fn from(err: reboot_core::Error) -> Self {
        Self::Config(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::Io(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        Self::Config(err.to_string())
    }
}
