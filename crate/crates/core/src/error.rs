use thiserror::Error;

/// Errors raised by automata constructions, pipelines and file loading.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("component index {index} out of range for arity {arity}")]
    BadIndex { index: usize, arity: usize },
    #[error("automaton is not weak deterministic")]
    NotWeakDeterministic,
    #[error("determinization did not yield a weak automaton")]
    NonWeakResult,
    #[error("automaton is not deterministic: {0}")]
    NotDeterministic(String),
    #[error("automaton is not weak: {0}")]
    NotWeak(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("state property `{0}` must be deterministic and complete")]
    IncompleteCopAutomaton(String),
    #[error("local execution property `{0}` must be complete")]
    IncompleteLepAutomaton(String),
    #[error("local execution property `{0}` has no complement and is not weak deterministic")]
    MissingComplement(String),
    #[error("augmented alphabet has {size} symbols, above the cap of {cap}")]
    AlphabetCapExceeded { size: u64, cap: u64 },
    #[error("{what}: {size} exceeds the cap of {cap}")]
    SizeCap { what: String, size: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unresolved literal `{0}`")]
    UnresolvedLiteral(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::AlphabetMismatch(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
