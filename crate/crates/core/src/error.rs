use thiserror::Error;

/// Errors surfaced by the library.
///
/// Everything here is a domain error: the input was well-formed Rust data
/// but outside the mathematical domain of the requested operation, or a
/// configured size guard was hit before the computation finished.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Regex syntax error at a byte offset of the input string.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// A word or regex used a letter outside the declared alphabet.
    #[error("unknown letter {letter:?}")]
    UnknownLetter { letter: char },

    /// Two machines that must share an alphabet do not.
    #[error("alphabet mismatch")]
    AlphabetMismatch,

    /// The language passed as a circular language is not rotation closed.
    #[error("language is not rotation closed")]
    NotCircular,

    /// The state space A(-) is not distributive, so no decomposition of
    /// the identity exists and the language is not cuttable.
    #[error("language is not cuttable: A(-) is not distributive")]
    NotCuttable,

    /// The semimodule is not projective (equivalently, not distributive).
    #[error("semimodule is not projective")]
    NotProjective,

    /// An automaton failed a structural validity check.
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    /// A size guard was exceeded; the limit can be raised via
    /// [`crate::Limits`] or the `BOOLTOP_LIMIT` environment variable.
    #[error("size limit exceeded: {what} needs more than {limit} elements")]
    LimitExceeded { what: String, limit: usize },
}

impl Error {
    /// Stable machine-readable kind, used by the CLI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "Syntax",
            Error::UnknownLetter { .. } => "UnknownLetter",
            Error::AlphabetMismatch => "AlphabetMismatch",
            Error::NotCircular => "NotCircular",
            Error::NotCuttable => "NotCuttable",
            Error::NotProjective => "NotProjective",
            Error::InvalidAutomaton(_) => "InvalidAutomaton",
            Error::LimitExceeded { .. } => "LimitExceeded",
        }
    }
}
