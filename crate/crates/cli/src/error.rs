use thiserror::Error;

/// Exit status for domain errors raised by the library.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit status for malformed invocations.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {0}", .0.name())]
    Domain(#[from] kmcrystal::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("verification failed: {failed} check(s) reported violations")]
    VerificationFailed { failed: usize, report: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        }
    }

    /// The originating module's error name, for domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.name(),
            CliError::Usage(_) => "Usage",
            CliError::Io(..) => "Io",
            CliError::VerificationFailed { .. } => "VerificationFailed",
        }
    }
}
