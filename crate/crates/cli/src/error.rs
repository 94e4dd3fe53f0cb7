use std::process::ExitCode;

/// Failure of a command, carrying its exit status class.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    /// Input validation errors from the library are usage errors.
    pub fn usage(e: chtube::Error) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn numeric(e: chtube::Error) -> Self {
        match e {
            chtube::Error::PreconditionFailed { .. } | chtube::Error::NeighborhoodConditionFailed { .. } => {
                CliError::Precondition(e.to_string())
            }
            chtube::Error::DepthTooLarge { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_CERTIFICATE: u8 = 3;

pub fn exit(code: u8) -> ExitCode {
    ExitCode::from(code)
}
