use std::io;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },

    /// Stream read failure while parsing a line-oriented input.
    #[error("read failure at line {line}: {source}")]
    Read {
        line: usize,
        #[source]
        source: io::Error,
    },

    #[error("root not found: no category titled {title:?}")]
    RootNotFound { title: String },

    #[error("incompatible ontology file: {reason}")]
    IncompatibleOntology { reason: String },

    #[error("empty transcript: {id:?} contains no sentences")]
    EmptyTranscript { id: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency: {0}")]
    InternalConsistency(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}
