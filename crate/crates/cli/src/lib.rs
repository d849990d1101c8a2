//! Command-line front end: expression parsing, JSON I/O and subcommands.

pub mod commands;
pub mod io;
pub mod parser;

pub use commands::{execute, Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{context}: line {line}, column {col}: {msg}")]
    Parse { context: String, line: usize, col: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Domain(String),
}

impl From<kahler::Error> for CliError {
    fn from(e: kahler::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}
