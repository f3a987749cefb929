use thiserror::Error;

use crate::space::{MAX_STATES, MAX_TABLE_STATES};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state space must contain at least one state")]
    EmptyStateSpace,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("state space has {0} states; at most {MAX_STATES} are supported")]
    TooManyStates(usize),
    #[error("operation needs an explicit event table, which is limited to {MAX_TABLE_STATES} states (got {0})")]
    TableTooLarge(usize),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state index {0} is out of range")]
    StateOutOfRange(usize),
    #[error("event mentions states outside the state space")]
    EventOutOfRange,
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("player index {0} is out of range")]
    PlayerOutOfRange(usize),
    #[error("duplicate player `{0}`")]
    DuplicatePlayer(String),
    #[error("a belief model needs at least one player")]
    NoPlayers,
    #[error("operator table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("operator is not monotone: {smaller:#b} is contained in {larger:#b} but its image is not")]
    NonMonotone { smaller: u32, larger: u32 },
    #[error("operator was built over {got} states, model has {expected}")]
    SpaceMismatch { expected: usize, got: usize },
    #[error("possibility correspondence has {got} entries, expected {expected}")]
    CorrespondenceSize { expected: usize, got: usize },
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("unknown frame property `{0}`")]
    UnknownFrameProperty(String),
    #[error("signal: {0}")]
    InvalidSignal(String),
    #[error("possibility correspondence of player `{0}` is not a partition")]
    NotPartitional(String),
    #[error("game: {0}")]
    InvalidGame(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("{what} exceeds the supported bound ({detail})")]
    BoundExceeded { what: &'static str, detail: String },
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("claim `{claim}` cannot be audited with source mode `{mode}`")]
    UnsupportedSource { claim: String, mode: String },
    #[error("{0}")]
    Input(String),
}
