use crate::control::{ControlAction, ControlInstance, ControlType, Goal};
use crate::election::CandidateId;
use crate::error::{Error, Result};
use crate::systems::SystemRegistry;

/// From a constructive adding-candidates witness `added`: the destructive
/// deleting-candidates instance on `C ∪ added` (limit `|added|`) and the action
/// deleting `added` again.
pub fn dual_of_add(instance: &ControlInstance, added: &[CandidateId]) -> Result<(ControlInstance, ControlAction)> {
    if instance.control_type() != ControlType::AddCandidates || instance.goal() != Goal::Constructive {
        return Err(Error::ShapeMismatch(format!("expected CCAC, got {}", instance.problem())));
    }
    let mut keep = instance.base_candidates();
    keep.extend_from_slice(added);
    let dual = ControlInstance::delete_candidates(
        instance.system().clone(),
        Goal::Destructive,
        instance.distinguished(),
        instance.election().restrict(&keep),
        added.len(),
    )?;
    let mut added = added.to_vec();
    added.sort_unstable();
    Ok((dual, ControlAction::DeleteCandidates(added)))
}

/// From a destructive deleting-candidates witness `deleted`: the constructive
/// adding-candidates instance with qualified `C - deleted` and spoilers
/// `deleted`, and the action adding them back.
pub fn dual_of_delete(instance: &ControlInstance, deleted: &[CandidateId]) -> Result<(ControlInstance, ControlAction)> {
    if instance.control_type() != ControlType::DeleteCandidates || instance.goal() != Goal::Destructive {
        return Err(Error::ShapeMismatch(format!("expected DCDC, got {}", instance.problem())));
    }
    let mut spoilers = deleted.to_vec();
    spoilers.sort_unstable();
    let dual = ControlInstance::add_candidates(
        instance.system().clone(),
        Goal::Constructive,
        instance.distinguished(),
        instance.election().clone(),
        spoilers.clone(),
    )?;
    Ok((dual, ControlAction::AddCandidates(spoilers)))
}

/// For a witness that shows susceptibility (the goal was not met before the
/// action and is met after), checks that the dual witness also shows
/// susceptibility. `None` when `action` is not such a witness.
pub fn duality_check(registry: &SystemRegistry, instance: &ControlInstance, action: &ControlAction) -> Result<Option<bool>> {
    let c = instance.distinguished();
    let sys = registry.resolve(instance.system())?;
    let before = sys.winners(&instance.election().restrict(&instance.base_candidates()));
    let susceptible = |inst: &ControlInstance, act: &ControlAction| -> Result<bool> {
        let start = sys.winners(&inst.election().restrict(&inst.base_candidates()));
        Ok(!inst.goal().met(&start, c) && inst.goal_met(registry, act)?)
    };
    if !susceptible(instance, action)? {
        return Ok(None);
    }
    let (dual, dual_action) = match (instance.problem().goal, action) {
        (Goal::Constructive, ControlAction::AddCandidates(a)) if instance.control_type() == ControlType::AddCandidates => {
            dual_of_add(instance, a)?
        }
        (Goal::Destructive, ControlAction::DeleteCandidates(d)) if before.is_unique(c) => dual_of_delete(instance, d)?,
        _ => return Ok(None),
    };
    Ok(Some(susceptible(&dual, &dual_action)?))
}
