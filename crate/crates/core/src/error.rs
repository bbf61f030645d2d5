use std::fmt;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation was called outside its contract (bad pivot, illegal flip, ...).
    Contract(String),
    /// A textual encoding could not be parsed.
    Parse(String),
    /// The requested object does not exist (e.g. no Hamilton path).
    Domain(String),
    /// A search exceeded its node-expansion budget.
    Budget,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Domain(msg) => write!(f, "{msg}"),
            Error::Budget => write!(f, "search budget exhausted"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! contract {
    ($cond:expr, $($arg:tt)*) => {
        if !($cond) {
            return Err($crate::error::Error::Contract(format!($($arg)*)));
        }
    };
}

pub(crate) use contract;
