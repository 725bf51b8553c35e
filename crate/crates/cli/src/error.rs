use thiserror::Error;

/// Failures surfaced by the command-line front end. All of them are
/// input problems and map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{pointer}: unresolved reference `{name}`")]
    Unresolved { pointer: String, name: String },

    #[error("{pointer}: {message}")]
    Invalid { pointer: String, message: String },

    #[error("instance too large: {0}")]
    Oversized(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Engine(#[from] catfourier::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
