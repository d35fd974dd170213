//! Deciders for control instances: an exhaustive search that serves as ground
//! truth, and polynomial-time algorithms for specific systems.
//!
//! Deciders are trait objects collected in a [`DeciderRegistry`] keyed by
//! system and control problem, so composite algorithms (the hybrid ones) can
//! look up whatever decider is registered for a constituent.

mod brute;
mod dispatch;
mod enumerate;
mod hybrid;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::control::{ControlAction, ControlInstance, ControlProblem};
use crate::error::{Error, Result};
use crate::systems::SystemId;

pub use brute::{search_space, BruteForce, DEFAULT_BUDGET};
pub use dispatch::PolyDispatcher;
pub use enumerate::{for_each_subset_upto, Combinations};
pub use hybrid::{AddCandidatesCase, HybridAddCandidates, RouteVoters};
pub use poly::{DestructivePoly, E1PrefixDeleteCandidates, E1TriEvenPartition, E1TriRunoffPartition};

/// Answer to a control instance. A YES always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decision {
    pub answer: bool,
    pub witness: Option<ControlAction>,
}

impl Decision {
    pub fn yes(witness: ControlAction) -> Self {
        Decision { answer: true, witness: Some(witness) }
    }

    pub fn no() -> Self {
        Decision { answer: false, witness: None }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) if self.answer => write!(f, "YES witness {w}"),
            _ if self.answer => f.write_str("YES"),
            _ => f.write_str("NO"),
        }
    }
}

pub trait Decider: Send + Sync {
    fn name(&self) -> &str;

    fn decide(&self, instance: &ControlInstance) -> Result<Decision>;
}

/// Deciders by (system, problem), with optional per-system and global fallbacks.
#[derive(Clone, Default)]
pub struct DeciderRegistry {
    exact: BTreeMap<(SystemId, ControlProblem), Arc<dyn Decider>>,
    per_system: BTreeMap<SystemId, Arc<dyn Decider>>,
    fallback: Option<Arc<dyn Decider>>,
}

impl fmt::Debug for DeciderRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for ((s, p), d) in &self.exact {
            m.entry(&format!("{s} {p}"), &d.name());
        }
        for (s, d) in &self.per_system {
            m.entry(&format!("{s} *"), &d.name());
        }
        if let Some(d) = &self.fallback {
            m.entry(&"*", &d.name());
        }
        m.finish()
    }
}

impl DeciderRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, system: SystemId, problem: ControlProblem, decider: Arc<dyn Decider>) -> &mut Self {
        self.exact.insert((system, problem), decider);
        self
    }

    /// Used for every problem on `system` without an exact entry.
    pub fn register_system(&mut self, system: SystemId, decider: Arc<dyn Decider>) -> &mut Self {
        self.per_system.insert(system, decider);
        self
    }

    /// Used when nothing more specific is registered.
    pub fn set_fallback(&mut self, decider: Arc<dyn Decider>) -> &mut Self {
        self.fallback = Some(decider);
        self
    }

    pub fn get(&self, system: &SystemId, problem: ControlProblem) -> Result<Arc<dyn Decider>> {
        self.exact
            .get(&(system.clone(), problem))
            .or_else(|| self.per_system.get(system))
            .or(self.fallback.as_ref())
            .cloned()
            .ok_or_else(|| Error::NoDeciderRegistered(format!("{problem} on {system}")))
    }
}

impl Decider for DeciderRegistry {
    fn name(&self) -> &str {
        "registry"
    }

    fn decide(&self, instance: &ControlInstance) -> Result<Decision> {
        self.get(instance.system(), instance.problem())?.decide(instance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Fixed(&'static str);

    impl Decider for Fixed {
        fn name(&self) -> &str {
            self.0
        }
        fn decide(&self, _: &ControlInstance) -> Result<Decision> {
            Ok(Decision::no())
        }
    }

    #[test]
    fn lookup_prefers_the_most_specific_entry() {
        let p = SystemId::named("plurality");
        let ccdc: ControlProblem = "CCDC".parse().unwrap();
        let ccav: ControlProblem = "CCAV".parse().unwrap();
        let mut r = DeciderRegistry::new();
        assert!(matches!(r.get(&p, ccdc), Err(Error::NoDeciderRegistered(_))));
        r.set_fallback(Arc::new(Fixed("any")));
        r.register_system(p.clone(), Arc::new(Fixed("plurality")));
        r.register(p.clone(), ccdc, Arc::new(Fixed("exact")));
        assert_eq!(r.get(&p, ccdc).unwrap().name(), "exact");
        assert_eq!(r.get(&p, ccav).unwrap().name(), "plurality");
        assert_eq!(r.get(&SystemId::named("condorcet"), ccav).unwrap().name(), "any");
    }

    #[test]
    fn decision_rendering() {
        use crate::election::ids;
        assert_eq!(Decision::yes(ControlAction::AddCandidates(ids(&[1]))).to_string(), "YES witness add {1}");
        assert_eq!(Decision::no().to_string(), "NO");
    }
}
