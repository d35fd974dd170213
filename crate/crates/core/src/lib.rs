//! Hybrid election systems and electoral control.
//!
//! The crate provides an election data model, a set of election systems
//! (including a hybrid combinator that routes by candidate-name residues), the
//! twenty constructive/destructive control problems, exhaustive and
//! polynomial-time deciders for them, reductions from exact cover and vertex
//! cover, and a harness for checking all of these against each other.

pub mod codec;
pub mod control;
pub mod election;
pub mod error;
pub mod harness;
pub mod reductions;
pub mod solvers;
pub mod systems;

pub use codec::NameCodec;
pub use control::{ControlAction, ControlInstance, ControlProblem, ControlType, Goal, TieModel};
pub use election::{Ballot, CandidateId, Election, WinnerSet};
pub use error::{Error, Result};
pub use solvers::{Decider, DeciderRegistry, Decision};
pub use systems::{ElectionSystem, SystemId, SystemRegistry};
