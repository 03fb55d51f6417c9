use thiserror::Error;

/// Anything that stops a command before it produces a verdict; all of these
/// exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("unknown function `{0}`; known: {1}")]
    UnknownFunction(String, String),

    #[error(transparent)]
    Library(#[from] qhankel::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}
