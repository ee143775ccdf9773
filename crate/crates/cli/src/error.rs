use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] tropvar::Error),
    #[error("{0}")]
    Violation(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 1 for bad input, 2 for a broken internal invariant.
    pub fn exit_code(&self) -> u8 {
        use tropvar::Error as E;
        match self {
            CliError::Input(_) | CliError::Io { .. } => 1,
            CliError::Violation(_) => 2,
            CliError::Core(e) => match e {
                E::Invariant(_) | E::RadicandMismatch(..) | E::ContainsLine | E::Unbounded => 2,
                _ => 1,
            },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub(crate) fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}
