use std::process::ExitCode;

use rsbivector::Error;

pub const OK: u8 = 0;
pub const VERIFY_FAILED: u8 = 1;
pub const INVALID_CONFIG: u8 = 2;
pub const NON_FINITE: u8 = 3;
pub const IO: u8 = 4;
pub const MALFORMED_DUMP: u8 = 5;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self { code: INVALID_CONFIG, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: IO, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NonFiniteField(_) => NON_FINITE,
            Error::Io(_) => IO,
            Error::Format(_) => MALFORMED_DUMP,
            _ => INVALID_CONFIG,
        };
        Self { code, message: e.to_string() }
    }
}
