use serde_json::{json, Value};
use swmix_core::{Error, SearchError};

/// Driver failures, each with its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input or a precondition the analysis rejects.
    Invalid(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        1
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Invalid(m) => ("validation", m),
            CliError::Io(m) => ("io", m),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Splits a search result into its value (complete or partial) and the
/// reason it stopped early, if any.
pub fn settle<T>(r: Result<T, SearchError<T>>) -> Result<(T, Option<String>), CliError> {
    match r {
        Ok(v) => Ok((v, None)),
        Err(SearchError::Budget { partial, reason }) => Ok((partial, Some(reason.to_string()))),
        Err(SearchError::Invalid(e)) => Err(e.into()),
    }
}
