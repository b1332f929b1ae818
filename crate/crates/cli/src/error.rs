use std::io;
use std::path::PathBuf;

use euler_census::asymptotic::AsymptoticError;
use euler_census::enumeration::EnumerationError;
use euler_census::integral::IntegralError;
use euler_census::spectral::SpectralError;
use euler_census::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("parse error: {0}")]
    Parse(GraphError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(GraphError),
    #[error(transparent)]
    Asymptotic(#[from] AsymptoticError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    /// 2 for bad input or unmet preconditions, 3 for exhausted resources.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Graph(GraphError::RetriesExhausted { .. }) => 3,
            CliError::Graph(_) => 2,
            CliError::Asymptotic(_) | CliError::Spectral(_) => 2,
            CliError::Enumeration(EnumerationError::Precondition(_)) => 2,
            CliError::Enumeration(_) => 3,
            CliError::Integral(
                IntegralError::Precondition(_)
                | IntegralError::BadEpsilon(_)
                | IntegralError::TooFewSamples { .. }
                | IntegralError::TooManyVertices { .. }
                | IntegralError::BadGrid(_),
            ) => 2,
            CliError::Integral(_) => 3,
            CliError::Write { .. } | CliError::Output(_) => 3,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
