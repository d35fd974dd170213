use std::sync::Arc;

use crate::control::{ControlInstance, ControlProblem, ControlType, Goal, TieModel};
use crate::error::{Error, Result};
use crate::systems::SystemId;

use super::{
    BruteForce, Decider, DeciderRegistry, Decision, DestructivePoly, E1PrefixDeleteCandidates, E1TriEvenPartition,
    E1TriRunoffPartition, HybridAddCandidates, RouteVoters,
};

/// Chooses a polynomial-time algorithm for an instance, or reports that none applies.
///
/// Hybrid adding-candidates and voter-control instances are handled by the
/// hybrid algorithms, which consult the registered polynomial deciders for
/// constituents and fall back to exhaustive search for the rest.
#[derive(Clone, Debug)]
pub struct PolyDispatcher {
    table: Arc<DeciderRegistry>,
    constituents: Arc<DeciderRegistry>,
}

impl PolyDispatcher {
    pub fn new(brute: BruteForce) -> Self {
        let table = Self::poly_table();
        let mut constituents = table.clone();
        constituents.set_fallback(Arc::new(brute));
        PolyDispatcher { table: Arc::new(table), constituents: Arc::new(constituents) }
    }

    /// The polynomial deciders for base systems, without any fallback.
    pub fn poly_table() -> DeciderRegistry {
        let mut r = DeciderRegistry::new();
        let cc = |kind| ControlProblem::new(Goal::Constructive, kind);
        let dc = |kind| ControlProblem::new(Goal::Destructive, kind);
        r.register(SystemId::named("e1_prefix"), cc(ControlType::DeleteCandidates), Arc::new(E1PrefixDeleteCandidates));
        for tie in TieModel::BOTH {
            r.register(SystemId::named("e1_tri"), cc(ControlType::RunoffPartitionCandidates(tie)), Arc::new(E1TriRunoffPartition));
            r.register(SystemId::named("e1_tri_even"), cc(ControlType::PartitionCandidates(tie)), Arc::new(E1TriEvenPartition));
        }
        for system in ["e0_dfirst", "e1_second"] {
            let id = SystemId::named(system);
            r.register(id.clone(), dc(ControlType::DeleteCandidates), Arc::new(DestructivePoly));
            for tie in TieModel::BOTH {
                r.register(id.clone(), dc(ControlType::PartitionCandidates(tie)), Arc::new(DestructivePoly));
                r.register(id.clone(), dc(ControlType::RunoffPartitionCandidates(tie)), Arc::new(DestructivePoly));
            }
        }
        r
    }
}

impl Decider for PolyDispatcher {
    fn name(&self) -> &str {
        "poly"
    }

    fn decide(&self, inst: &ControlInstance) -> Result<Decision> {
        if inst.system().is_hybrid() {
            let kind = inst.control_type();
            if kind == ControlType::AddCandidates {
                return HybridAddCandidates::new(self.constituents.clone()).decide(inst);
            }
            if kind.is_voter_control() {
                return RouteVoters::new(self.constituents.clone()).decide(inst);
            }
            return Err(Error::NoDeciderRegistered(format!("{} on {}", inst.problem(), inst.system())));
        }
        self.table.decide(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsupported_combinations_are_reported() {
        let p = PolyDispatcher::new(BruteForce::default());
        let i = ControlInstance::parse("type CCDC\nsystem plurality\ndistinguished 0\nk 0\ncandidates 0\n").unwrap();
        assert!(matches!(p.decide(&i), Err(Error::NoDeciderRegistered(_))));
        let h = ControlInstance::parse(
            "type CCDC\nsystem hybrid:e0_solo,e1_prefix\ndistinguished 0\nk 0\ncandidates 0\n",
        )
        .unwrap();
        assert!(matches!(p.decide(&h), Err(Error::NoDeciderRegistered(_))));
        let ok = ControlInstance::parse("type CCDC\nsystem e1_prefix\ndistinguished 0\nk 0\ncandidates 0\n").unwrap();
        assert!(!p.decide(&ok).unwrap().answer);
    }
}
