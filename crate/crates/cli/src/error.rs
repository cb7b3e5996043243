use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Parse(#[from] crate::parse::ParseError),
    #[error("{0}")]
    Property(String),
}

impl From<smithalg::Error> for CliError {
    fn from(e: smithalg::Error) -> Self {
        match e {
            smithalg::Error::UnstableMembership | smithalg::Error::InconsistentCertification { .. } => {
                CliError::Property(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) | CliError::Parse(_) => ExitCode::from(1),
            CliError::Property(_) => ExitCode::from(2),
        }
    }
}
