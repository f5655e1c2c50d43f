use std::fmt::Display;

/// Errors grouped by the exit code they map to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0:#}")]
    Config(anyhow::Error),
    #[error("data error: {0:#}")]
    Data(anyhow::Error),
    #[error("stage `{stage}` failed: {source:#}")]
    Stage {
        stage: &'static str,
        source: anyhow::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Stage { .. } => 4,
        }
    }

    pub fn config(msg: impl Display) -> Self {
        CliError::Config(anyhow::anyhow!("{msg}"))
    }

    pub fn data(msg: impl Display) -> Self {
        CliError::Data(anyhow::anyhow!("{msg}"))
    }

    /// Attributes the error to a pipeline stage, keeping data and
    /// configuration errors in their own class.
    pub fn in_stage(self, stage: &'static str) -> Self {
        match self {
            CliError::Config(e) => CliError::Config(e.context(format!("stage `{stage}`"))),
            CliError::Data(e) => CliError::Data(e.context(format!("stage `{stage}`"))),
            CliError::Stage { source, .. } => CliError::Stage { stage, source },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Tags fallible results with an error class.
pub trait ResultExt<T> {
    fn config_err(self) -> Result<T>;
    fn data_err(self) -> Result<T>;
    fn stage_err(self, stage: &'static str) -> Result<T>;
}

impl<T, E> ResultExt<T> for std::result::Result<T, E>
where
    E: Into<anyhow::Error>,
{
    fn config_err(self) -> Result<T> {
        self.map_err(|e| CliError::Config(e.into()))
    }

    fn data_err(self) -> Result<T> {
        self.map_err(|e| CliError::Data(e.into()))
    }

    fn stage_err(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| CliError::Stage {
            stage,
            source: e.into(),
        })
    }
}
