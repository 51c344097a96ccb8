use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Usage,
    CapExceeded,
    Parse,
    Io,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::CapExceeded => 3,
            ErrorKind::Parse => 4,
            ErrorKind::Io | ErrorKind::Internal => 1,
        }
    }
}

#[derive(Debug, Error, Clone, Serialize)]
#[error("{message}")]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new(ErrorKind::Usage, message)
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError::new(ErrorKind::Parse, message)
    }
}

impl From<rtl_core::Error> for CliError {
    fn from(e: rtl_core::Error) -> Self {
        use rtl_core::Error as E;
        let kind = match &e {
            E::Parse { .. } => ErrorKind::Parse,
            E::CapExceeded { .. } => ErrorKind::CapExceeded,
            E::Undecided => ErrorKind::Internal,
            _ => ErrorKind::Usage,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(ErrorKind::Io, e.to_string())
    }
}
