//! Deciders for hybrid systems built from deciders for their constituents.

use std::sync::Arc;

use crate::control::{ControlAction, ControlInstance, ControlType};
use crate::election::CandidateId;
use crate::error::{Error, Result};
use crate::systems::{residue_route, Route, SystemId};

use super::{Decider, DeciderRegistry, Decision};

/// How the qualified and spoiler candidates of an adding-candidates instance sit
/// among the residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddCandidatesCase {
    /// The qualified candidates already mix residues.
    Mixed,
    /// Qualified and spoiler candidates all share residue q.
    Uniform(usize),
    /// Qualified candidates share residue q, some spoiler does not.
    Split(usize),
}

fn residue(c: CandidateId, k: usize) -> usize {
    c.0 as usize % k
}

/// Adding candidates on a hybrid: pick the constituent by residues, and when a
/// spoiler with another residue could switch the system, try forcing each such
/// spoiler in.
#[derive(Clone, Debug)]
pub struct HybridAddCandidates {
    deciders: Arc<DeciderRegistry>,
}

impl HybridAddCandidates {
    pub fn new(deciders: Arc<DeciderRegistry>) -> Self {
        HybridAddCandidates { deciders }
    }

    pub fn case(instance: &ControlInstance) -> Result<AddCandidatesCase> {
        let k = instance.system().constituents().len();
        if !instance.system().is_hybrid() || instance.control_type() != ControlType::AddCandidates || k == 0 {
            return Err(Error::WrongSystem {
                algorithm: "hybrid-ac",
                instance: format!("{} on {}", instance.problem(), instance.system()),
            });
        }
        Ok(match residue_route(&instance.base_candidates(), k) {
            Route::Default => AddCandidatesCase::Mixed,
            Route::Constituent(q) if instance.spoilers().iter().all(|&d| residue(d, k) == q) => {
                AddCandidatesCase::Uniform(q)
            }
            Route::Constituent(q) => AddCandidatesCase::Split(q),
        })
    }

    fn delegate(&self, system: &SystemId, inst: &ControlInstance) -> Result<Decision> {
        let routed = inst.with_system(system.clone());
        self.deciders.get(system, routed.problem())?.decide(&routed)
    }
}

impl Decider for HybridAddCandidates {
    fn name(&self) -> &str {
        "hybrid-ac"
    }

    fn decide(&self, inst: &ControlInstance) -> Result<Decision> {
        let case = Self::case(inst)?;
        let parts = inst.system().constituents();
        let default = inst.system().default_constituent().expect("hybrid");
        let k = parts.len();
        match case {
            AddCandidatesCase::Mixed => self.delegate(&default, inst),
            AddCandidatesCase::Uniform(q) => self.delegate(&parts[q], inst),
            AddCandidatesCase::Split(q) => {
                let qualified = inst.base_candidates();
                let (on, off): (Vec<CandidateId>, Vec<CandidateId>) =
                    inst.spoilers().iter().partition(|&&d| residue(d, k) == q);

                // Step 1: only same-residue spoilers, decided by constituent q.
                let mut keep = qualified.clone();
                keep.extend(on.iter().copied());
                let step1 = ControlInstance::add_candidates(
                    parts[q].clone(),
                    inst.goal(),
                    inst.distinguished(),
                    inst.election().restrict(&keep),
                    on,
                )?;
                let d = self.delegate(&parts[q], &step1)?;
                if d.answer {
                    return Ok(d);
                }

                // Step 2: force one off-residue spoiler in; the default system decides.
                for &forced in &off {
                    let rest: Vec<CandidateId> = inst.spoilers().iter().copied().filter(|&x| x != forced).collect();
                    let step2 = ControlInstance::add_candidates(
                        default.clone(),
                        inst.goal(),
                        inst.distinguished(),
                        inst.election().clone(),
                        rest,
                    )?;
                    let d = self.delegate(&default, &step2)?;
                    if d.answer {
                        let Some(ControlAction::AddCandidates(mut added)) = d.witness else {
                            return Err(Error::InvariantViolation("constituent decider returned a non-AC witness".into()));
                        };
                        added.push(forced);
                        added.sort_unstable();
                        return Ok(Decision::yes(ControlAction::AddCandidates(added)));
                    }
                }
                // Step 3
                Ok(Decision::no())
            }
        }
    }
}

/// Voter control on a hybrid: hand the whole instance to the decider of the
/// constituent the candidate set routes to.
#[derive(Clone, Debug)]
pub struct RouteVoters {
    deciders: Arc<DeciderRegistry>,
}

impl RouteVoters {
    pub fn new(deciders: Arc<DeciderRegistry>) -> Self {
        RouteVoters { deciders }
    }

    /// The constituent the instance is handed to.
    pub fn target(instance: &ControlInstance) -> Result<SystemId> {
        if !instance.system().is_hybrid() || !instance.control_type().is_voter_control() {
            return Err(Error::WrongSystem {
                algorithm: "hybrid-voters",
                instance: format!("{} on {}", instance.problem(), instance.system()),
            });
        }
        Ok(instance.system().routed(instance.election().candidates()))
    }
}

impl Decider for RouteVoters {
    fn name(&self) -> &str {
        "hybrid-voters"
    }

    fn decide(&self, inst: &ControlInstance) -> Result<Decision> {
        let target = Self::target(inst)?;
        let routed = inst.with_system(target.clone());
        self.deciders.get(&target, routed.problem())?.decide(&routed)
    }
}
