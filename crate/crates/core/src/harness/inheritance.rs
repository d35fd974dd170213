use crate::control::ControlInstance;
use crate::error::{Error, Result};
use crate::solvers::{Decider, Decision};
use crate::systems::SystemId;

use super::rename::{embed_rename, RenamingMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InheritanceReport {
    pub image: ControlInstance,
    pub constituent: Decision,
    pub hybrid: Decision,
}

impl InheritanceReport {
    pub fn agree(&self) -> bool {
        self.constituent.answer == self.hybrid.answer
    }
}

/// Decides `instance` (posed for constituent `i`) directly, and its `k*c + i`
/// image posed for the hybrid of `constituents`.
pub fn inheritance_check(
    decider: &dyn Decider,
    constituents: &[SystemId],
    i: usize,
    instance: &ControlInstance,
) -> Result<InheritanceReport> {
    if constituents.get(i) != Some(instance.system()) {
        return Err(Error::InvariantViolation(format!("instance is not posed for constituent {i}")));
    }
    let names: Vec<String> = constituents.iter().map(|s| s.to_string()).collect();
    let hybrid = SystemId::Hybrid(names);
    let map = RenamingMap::affine(constituents.len() as u32, i as u32)?;
    let image = embed_rename(instance, &map)?.with_system(hybrid);
    Ok(InheritanceReport { constituent: decider.decide(instance)?, hybrid: decider.decide(&image)?, image })
}
