//! Error classes mapped to exit codes: 1 usage, 2 data, 3 internal.

use semantic_cells::harness::{ExperimentError, GenerateError, IngestError, OrderingError};
use semantic_cells::{EmbeddingError, EvolveError, InvalidConfig, MetricsError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self::Usage(message.into())
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self::Data(message.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 1,
            Self::Data(_) => 2,
            Self::Internal(_) => 3,
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        Self::Data(e.to_string())
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        Self::Data(e.to_string())
    }
}

impl From<OrderingError> for CliError {
    fn from(e: OrderingError) -> Self {
        Self::Data(e.to_string())
    }
}

impl From<EvolveError> for CliError {
    fn from(e: EvolveError) -> Self {
        Self::Data(e.to_string())
    }
}

impl From<MetricsError> for CliError {
    // Inputs are validated before any metric is computed, so a metrics
    // failure means the tool built a malformed trajectory itself.
    fn from(e: MetricsError) -> Self {
        Self::Internal(e.to_string())
    }
}

impl From<InvalidConfig> for CliError {
    fn from(e: InvalidConfig) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<GenerateError> for CliError {
    // Every generator input comes from flags.
    fn from(e: GenerateError) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::NothingTracked
            | ExperimentError::TooFewOrderings(_)
            | ExperimentError::NoSeeds => Self::Usage(e.to_string()),
            ExperimentError::EmptyCorpus
            | ExperimentError::Ordering(_)
            | ExperimentError::Evolve(_) => Self::Data(e.to_string()),
            ExperimentError::Metrics(_) => Self::Internal(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Data(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Data(e.to_string())
    }
}
