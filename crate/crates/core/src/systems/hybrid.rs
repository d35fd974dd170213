use std::sync::Arc;

use crate::election::{CandidateId, Election, WinnerSet};

use super::ElectionSystem;

/// Which system a hybrid evaluates an election with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Constituent(usize),
    Default,
}

/// `Constituent(i)` when the set is nonempty and every id is congruent to i mod k.
pub fn residue_route(candidates: &[CandidateId], k: usize) -> Route {
    assert!(k > 0, "hybrid needs at least one constituent");
    let Some(first) = candidates.first() else {
        return Route::Default;
    };
    let r = first.0 as usize % k;
    if candidates.iter().all(|c| c.0 as usize % k == r) {
        Route::Constituent(r)
    } else {
        Route::Default
    }
}

/// Evaluates an election with exactly one constituent, chosen by candidate residues.
pub struct Hybrid {
    name: String,
    constituents: Vec<Arc<dyn ElectionSystem>>,
    default: Arc<dyn ElectionSystem>,
}

impl Hybrid {
    pub fn new(
        name: String,
        constituents: Vec<Arc<dyn ElectionSystem>>,
        default: Arc<dyn ElectionSystem>,
    ) -> Self {
        assert!(!constituents.is_empty());
        Hybrid { name, constituents, default }
    }

    pub fn k(&self) -> usize {
        self.constituents.len()
    }

    pub fn route(&self, candidates: &[CandidateId]) -> Route {
        residue_route(candidates, self.k())
    }

    pub fn system_for(&self, route: Route) -> &dyn ElectionSystem {
        match route {
            Route::Constituent(i) => self.constituents[i].as_ref(),
            Route::Default => self.default.as_ref(),
        }
    }
}

impl ElectionSystem for Hybrid {
    fn name(&self) -> &str {
        &self.name
    }

    fn tie_free(&self) -> bool {
        self.default.tie_free() && self.constituents.iter().all(|s| s.tie_free())
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        self.system_for(self.route(e.candidates())).winners(e)
    }

    fn as_hybrid(&self) -> Option<&Hybrid> {
        Some(self)
    }
}
