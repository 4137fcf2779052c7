use spinoptics::OpticsError;
use thiserror::Error;

use crate::chain::ChainError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ChainError),
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error("cannot read chain from stdin: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 usage/parse, 3 domain, 4 numerical integrity.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Optics(OpticsError::Usage(_)) => 2,
            CliError::Optics(OpticsError::Domain(_)) => 3,
            CliError::Optics(OpticsError::Integrity(_)) => 4,
        }
    }
}
