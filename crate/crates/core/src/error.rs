use thiserror::Error;

/// A semantic problem found while validating a game document, with a
/// JSON-path-like location (`payoffs[3].partition`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid coalition-size bound k={k} for {n} players (need 1 <= k <= n)")]
    InvalidBound { n: usize, k: usize },

    #[error("partition parse error: {0}")]
    PartitionParse(String),

    #[error("invalid player set: {0}")]
    PlayerSet(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("game spec has {} problem(s): {}", .0.len(), join(.0))]
    Validation(Vec<Diagnostic>),

    #[error("invalid profile: {0}")]
    Profile(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("operation needs exactly 2 players, game has {0}")]
    WrongArity(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown fixture \"{0}\" (known: dinner, lunch, bos, staghare)")]
    UnknownFixture(String),

    #[error("invalid fixture parameter: {0}")]
    FixtureParameter(String),
}

fn join(d: &[Diagnostic]) -> String {
    d.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
