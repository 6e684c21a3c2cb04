use std::path::PathBuf;

use crate::scenario_file::{LoadError, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: invalid scenario: {source}")]
    Invalid { path: PathBuf, source: irs_route_core::Error },
    #[error("{0}")]
    Usage(String),
    #[error("no feasible route from the BS to the user")]
    NoRoute,
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(irs_route_core::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 3 parse, 4 validation, 5 no route, 6 I/O, 1 anything else. Usage
    /// errors share clap's code 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::Invalid { .. } => 4,
            CliError::NoRoute => 5,
            CliError::Io { .. } => 6,
            CliError::Core(irs_route_core::Error::NoRoute) => 5,
            CliError::Core(_) | CliError::Csv(_) => 1,
        }
    }

    pub(crate) fn load(path: PathBuf, err: LoadError) -> Self {
        match err {
            LoadError::Parse(source) => CliError::Parse { path, source },
            LoadError::Invalid(source) => CliError::Invalid { path, source },
        }
    }
}

impl From<irs_route_core::Error> for CliError {
    fn from(e: irs_route_core::Error) -> Self {
        match e {
            irs_route_core::Error::NoRoute => CliError::NoRoute,
            other => CliError::Core(other),
        }
    }
}
