use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<sph_core::Error> for CliError {
    fn from(e: sph_core::Error) -> Self {
        use sph_core::Error as E;
        match e {
            E::Io { .. } => CliError::Io(e.to_string()),
            E::ChecksumMismatch { .. } => CliError::Mismatch(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
