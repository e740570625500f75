use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("no truth value for atom `{0}`")]
    MissingAtom(String),

    #[error("unknown atom `{0}` (not in the model's valuation)")]
    UnknownAtom(String),

    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),

    #[error("{what}: {count} exceeds the configured bound of {limit}")]
    SizeLimit {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("selection f({state}, {{{event}}}) is undefined")]
    UndefinedSelection { state: String, event: String },

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("duplicate state id `{0}`")]
    DuplicateState(String),

    #[error("duplicate selection entry for ({state}, {{{event}}})")]
    DuplicateSelection { state: String, event: String },

    #[error("unknown completion rule `{0}`")]
    UnknownRule(String),

    #[error("unknown selector `{0}`")]
    UnknownSelector(String),

    #[error("event must be nonempty: {0}")]
    EmptyEvent(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("pre-order is not faithful: {0}")]
    Unfaithful(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
