use thiserror::Error;

use crate::election::CandidateId;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("name {name:?} contains a symbol outside the codec alphabet")]
    InvalidName { name: String },

    #[error("invalid ballot: {0}")]
    InvalidBallot(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown election system {0:?}")]
    UnknownSystem(String),

    #[error("invalid system id: {0}")]
    InvalidSystemId(String),

    #[error("action does not match the control instance: {0}")]
    ShapeMismatch(String),

    #[error("action violates the instance bounds: {0}")]
    BoundViolation(String),

    #[error("search space of {required} actions exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("no decider registered for {0}")]
    NoDeciderRegistered(String),

    #[error("algorithm {algorithm} does not apply to {instance}")]
    WrongSystem { algorithm: &'static str, instance: String },

    #[error("instance invariant violated: {0}")]
    InvariantViolation(String),

    #[error("graph has {vertices} vertices, which violates the parity required by {target}")]
    ParityViolation { vertices: usize, target: String },

    #[error("{edges} edges do not fit in a padded electorate of {voters} voters")]
    TooManyEdges { edges: usize, voters: usize },

    #[error("renaming is not injective on candidate {0}")]
    NonInjectiveMap(CandidateId),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("replay mismatch in {scenario}: {detail}")]
    ReplayMismatch { scenario: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
