use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Argument outside the domain the operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Argument inside the domain but violating a stated precondition
    /// (non-neighbours passed to a mediant, odd-length word, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("depth {requested} exceeds the configured maximum of {max}")]
    DepthLimit { requested: usize, max: usize },

    /// A structural invariant did not hold, e.g. a Cohn matrix whose trace
    /// is not three times its top-right entry.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("at path position {position}: {source}")]
    AtPath {
        position: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
