use std::fmt;
use std::process::ExitCode;

use qcorr::Error;

/// Errors that end a run, each with its own exit code.
#[derive(Debug)]
pub enum Failure {
    MalformedState(String),
    InvalidArgument(String),
    Arity(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::MalformedState(_) => 2,
            Failure::InvalidArgument(_) => 3,
            Failure::Arity(_) => 4,
            Failure::Io(_) => 5,
        })
    }

    /// Any problem reading a state file counts as a malformed state.
    pub fn reading(path: &std::path::Path, e: Error) -> Self {
        Failure::MalformedState(format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::MalformedState(m) => write!(f, "malformed state: {m}"),
            Failure::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Failure::Arity(m) => write!(f, "state does not fit the request: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::QubitCount { .. } | Error::NotPureState | Error::QubitOutOfRange { .. } => Failure::Arity(message),
            Error::Io(_) => Failure::Io(message),
            Error::NotSquare(..)
            | Error::NotQubitDimension(..)
            | Error::NotHermitian(_)
            | Error::InvalidTrace(..)
            | Error::NotPositive(_)
            | Error::NotNormalized(_)
            | Error::Format(_)
            | Error::Json(_) => Failure::MalformedState(message),
            _ => Failure::InvalidArgument(message),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}
