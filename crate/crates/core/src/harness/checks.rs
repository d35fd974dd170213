use std::fmt;

use crate::control::ControlInstance;
use crate::error::Result;
use crate::solvers::{Decider, Decision};
use crate::systems::SystemRegistry;

/// A true answer carries a witness that meets the goal; a false one carries none.
pub fn witness_sound(registry: &SystemRegistry, instance: &ControlInstance, decision: &Decision) -> Result<bool> {
    match (&decision.witness, decision.answer) {
        (Some(w), true) => instance.goal_met(registry, w),
        (None, false) => Ok(true),
        _ => Ok(false),
    }
}

/// For limited types: a YES stays YES at `k+1` and a NO stays NO at `k-1`.
/// Types without a limit, and neighbours outside the legal range, pass.
pub fn limit_monotone(decider: &dyn Decider, instance: &ControlInstance, decision: &Decision) -> Result<bool> {
    let Some(k) = instance.limit() else {
        return Ok(true);
    };
    let neighbour = if decision.answer { k.checked_add(1) } else { k.checked_sub(1) };
    let Some(k2) = neighbour else {
        return Ok(true);
    };
    let Ok(other) = instance.with_limit(k2) else {
        return Ok(true);
    };
    Ok(decider.decide(&other)?.answer == decision.answer)
}

/// Whether a sequence of answers for `k = 0, 1, ...` never goes from YES back to NO.
pub fn monotone_answers(answers: &[bool]) -> bool {
    answers.windows(2).all(|w| w[0] <= w[1])
}

/// Tally of one agreement grid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridReport {
    pub name: String,
    pub cases: usize,
    pub disagreements: usize,
    pub unsound: usize,
    pub nonmonotone: usize,
    pub first_failure: Option<String>,
}

impl GridReport {
    pub fn new(name: impl Into<String>) -> Self {
        GridReport { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.cases > 0 && self.disagreements == 0 && self.unsound == 0 && self.nonmonotone == 0
    }

    fn note(&mut self, what: impl FnOnce() -> String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    /// Counts one compared case.
    pub fn case(&mut self, agree: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !agree {
            self.disagreements += 1;
            self.note(|| format!("disagreement: {}", what()));
        }
    }

    pub fn soundness(&mut self, sound: bool, what: impl FnOnce() -> String) {
        if !sound {
            self.unsound += 1;
            self.note(|| format!("unsound witness: {}", what()));
        }
    }

    pub fn monotonicity(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.nonmonotone += 1;
            self.note(|| format!("not monotone in k: {}", what()));
        }
    }

    pub fn merge(&mut self, other: GridReport) {
        self.cases += other.cases;
        self.disagreements += other.disagreements;
        self.unsound += other.unsound;
        self.nonmonotone += other.nonmonotone;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} disagreements, {} unsound, {} non-monotone {}",
            self.name,
            self.cases,
            self.disagreements,
            self.unsound,
            self.nonmonotone,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        if let Some(why) = &self.first_failure {
            write!(f, "\n  first failure: {why}")?;
        }
        Ok(())
    }
}
