use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised when constructing domain values or evaluating metrics.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A fuzzy interval breaks `a <= b <= c <= d`, has a non-finite bound or an empty label.
    InvalidInterval { label: String, reason: &'static str },
    /// A vocabulary is empty or repeats a label.
    InvalidVocabulary { name: String, reason: String },
    /// Windows must be strictly positive and finite.
    InvalidWindow { which: &'static str, value: f64 },
    /// A threshold outside `[0, 1]`.
    InvalidThreshold { which: &'static str, value: f64 },
    /// Support is undefined for a rule set with zero total weight.
    UndefinedSupport,
    /// The rule's trigger pair has no accumulated weight in the rule set.
    UnknownTrigger { trigger1: String, trigger2: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInterval { label, reason } => {
                write!(f, "invalid fuzzy interval '{label}': {reason}")
            }
            Error::InvalidVocabulary { name, reason } => {
                write!(f, "invalid vocabulary '{name}': {reason}")
            }
            Error::InvalidWindow { which, value } => {
                write!(f, "{which} window must be positive and finite, got {value}")
            }
            Error::InvalidThreshold { which, value } => {
                write!(f, "{which} must be within [0, 1], got {value}")
            }
            Error::UndefinedSupport => f.write_str("support is undefined: total weight is zero"),
            Error::UnknownTrigger { trigger1, trigger2 } => {
                write!(f, "trigger pair ({trigger1}, {trigger2}) is not part of the rule set")
            }
        }
    }
}

impl core::error::Error for Error {}
