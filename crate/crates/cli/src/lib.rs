//! `ccqed` command implementations.
//!
//! Each subcommand resolves its configuration into a [`Table`] which is then
//! rendered as CSV or JSON. Keeping rendering separate from argument parsing
//! lets the tests drive the commands without spawning a process.

pub mod commands;
pub mod output;

use thiserror::Error;

pub use commands::{Cli, Command};
pub use output::{Cell, Format, Table};

/// Environment variable naming the molecule database used when `--db` is absent.
pub const DB_ENV: &str = "CCQED_DB";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ccqed_core::Error),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 0 success, 2 usage/config, 3 data/validation, 4 numeric failure.
    pub fn exit_code(&self) -> i32 {
        use ccqed_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Usage(_)) => 2,
            CliError::Core(E::Numeric(_)) => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) | CliError::Csv(_) => 3,
        }
    }
}
