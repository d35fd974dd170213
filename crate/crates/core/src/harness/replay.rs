use crate::control::{ControlAction, ControlInstance, Goal, TieModel};
use crate::election::{ids, CandidateId, Election, WinnerSet};
use crate::error::{Error, Result};
use crate::solvers::{BruteForce, Decider};
use crate::systems::{SystemId, SystemRegistry};

use super::duality::dual_of_add;

/// Outcome of one replayed scenario: a short description, or the mismatch.
pub type ScenarioResult = Result<String>;

fn expect(scenario: &str, what: &str, got: &WinnerSet, want: &[u32]) -> Result<()> {
    if got.as_slice() == ids(want).as_slice() {
        Ok(())
    } else {
        Err(Error::ReplayMismatch {
            scenario: scenario.into(),
            detail: format!("{what}: expected {}, got {got}", WinnerSet::from_vec(ids(want))),
        })
    }
}

fn first_last() -> SystemId {
    SystemId::hybrid(&["e_first", "e_last"])
}

/// Adding spoiler 1 to `({0,2}, [2 > 1 > 0])` moves the winner from 2 to 0.
fn adding_candidates(reg: &SystemRegistry) -> ScenarioResult {
    let name = "1 constructive adding candidates";
    let e = Election::from_ids(&[0, 1, 2], &[&[2, 1, 0]])?;
    let inst = ControlInstance::add_candidates(first_last(), Goal::Constructive, CandidateId(0), e, ids(&[1]))?;
    let sys = reg.resolve(inst.system())?;
    expect(name, "before", &sys.winners(&inst.election().restrict(&ids(&[0, 2]))), &[2])?;
    let add = ControlAction::AddCandidates(ids(&[1]));
    expect(name, "after adding {1}", &inst.outcome(reg, &add)?, &[0])?;
    let d = BruteForce::new(std::sync::Arc::new(reg.clone())).decide(&inst)?;
    if d.witness != Some(add) {
        return Err(Error::ReplayMismatch { scenario: name.into(), detail: format!("search returned {d}") });
    }
    Ok(format!("{name}: winners {{2}} -> {{0}}"))
}

/// The dual of scenario 1: deleting 1 from `({0,1,2}, [2 > 1 > 0])` dethrones 0.
fn deleting_candidates(reg: &SystemRegistry) -> ScenarioResult {
    let name = "2 destructive deleting candidates";
    let e = Election::from_ids(&[0, 1, 2], &[&[2, 1, 0]])?;
    let ccac = ControlInstance::add_candidates(first_last(), Goal::Constructive, CandidateId(0), e, ids(&[1]))?;
    let (dual, action) = dual_of_add(&ccac, &ids(&[1]))?;
    let sys = reg.resolve(dual.system())?;
    expect(name, "before", &sys.winners(dual.election()), &[0])?;
    expect(name, "after deleting {1}", &dual.outcome(reg, &action)?, &[2])?;
    Ok(format!("{name}: winners {{0}} -> {{2}}"))
}

fn partitions(reg: &SystemRegistry, goal: Goal) -> ScenarioResult {
    let (name, c) = match goal {
        Goal::Constructive => ("3 constructive partition of candidates", 2),
        Goal::Destructive => ("4 destructive partition of candidates", 0),
    };
    let e = Election::from_ids(&[0, 1, 2], &[&[2, 1, 0]])?;
    let sys = reg.resolve(&first_last())?;
    expect(name, "before", &sys.winners(&e), &[0])?;
    let action = ControlAction::PartitionCandidates { first: ids(&[0, 1]), second: ids(&[2]) };
    for tie in TieModel::BOTH {
        let pc = ControlInstance::partition_candidates(first_last(), goal, CandidateId(c), e.clone(), tie)?;
        let rpc = ControlInstance::runoff_partition_candidates(first_last(), goal, CandidateId(c), e.clone(), tie)?;
        for inst in [pc, rpc] {
            let what = format!("{} final round", inst.problem());
            expect(name, &what, &inst.outcome(reg, &action)?, &[2])?;
            if !inst.goal_met(reg, &action)? {
                return Err(Error::ReplayMismatch { scenario: name.into(), detail: format!("{what}: goal not met") });
            }
        }
    }
    Ok(match goal {
        Goal::Constructive => format!("{name}: final winners {{2}} in TE and TP"),
        Goal::Destructive => format!("{name}: 0 no longer wins in TE and TP"),
    })
}

/// The four worked counterexamples for hybrid(e_first, e_last).
pub fn replay_worked_examples(registry: &SystemRegistry) -> Vec<ScenarioResult> {
    vec![
        adding_candidates(registry),
        deleting_candidates(registry),
        partitions(registry, Goal::Constructive),
        partitions(registry, Goal::Destructive),
    ]
}
