use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("unsupported color count {0} (at most 64 colors)")]
    UnsupportedColors(u32),

    #[error("invalid color {color} on edge {edge} (r = {r})")]
    InvalidColor { edge: usize, color: u32, r: u32 },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("incompatible templates: {0}")]
    IncompatibleTemplates(String),

    #[error("vertices {0:?} do not form a triangle")]
    InvalidTriangle([usize; 3]),

    #[error("{what}: estimated {estimate} exceeds cap {cap}")]
    CapExceeded {
        what: String,
        estimate: String,
        cap: String,
    },

    #[error("average degree is zero; the co-degree functional is undefined")]
    UndefinedAverageDegree,

    #[error("comparison undecided at the maximum working precision")]
    Undecided,
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, estimate: impl ToString, cap: impl ToString) -> Self {
        Error::CapExceeded {
            what: what.into(),
            estimate: estimate.to_string(),
            cap: cap.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
