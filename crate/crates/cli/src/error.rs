use std::process::ExitCode;

use rnadist_core::oracles::OracleError;
use rnadist_core::{CodecError, LengthMismatch};
use thiserror::Error;

// Exit statuses. 2 is what clap uses for usage errors.
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_INVALID: u8 = 4;
pub const EXIT_LENGTH: u8 = 5;
pub const EXIT_IO: u8 = 6;
pub const EXIT_INFEASIBLE: u8 = 7;
pub const EXIT_OUTPUT: u8 = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{context}: {kind}: {source}")]
    Codec {
        context: String,
        kind: &'static str,
        #[source]
        source: CodecError,
    },
    #[error("LengthMismatch: {0}")]
    Length(String),
    #[error("Infeasible: {0}")]
    Infeasible(#[from] OracleError),
}

impl CliError {
    pub fn codec(context: impl Into<String>, source: CodecError) -> Self {
        CliError::Codec {
            context: context.into(),
            kind: source.kind(),
            source,
        }
    }

    pub fn length(e: LengthMismatch) -> Self {
        CliError::Length(e.to_string())
    }

    pub fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Codec { source, .. } if source.is_syntax() => EXIT_PARSE,
            CliError::Codec {
                source: CodecError::TooManyFamilies,
                ..
            } => EXIT_OUTPUT,
            CliError::Codec { .. } => EXIT_INVALID,
            CliError::Length(_) => EXIT_LENGTH,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
        }
    }

    pub fn report(&self) -> ExitCode {
        eprintln!("rnadist: {self}");
        ExitCode::from(self.status())
    }
}
