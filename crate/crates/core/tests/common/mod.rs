#![allow(dead_code)]

use std::sync::Arc;

use hybrid_control::election::{Election, WinnerSet};
use hybrid_control::reductions::{GraphInstance, X3CInstance};
use hybrid_control::systems::{ElectionSystem, SystemId, SystemRegistry};

/// Exact cover by backtracking on the smallest uncovered element.
pub fn exact_cover(inst: &X3CInstance) -> bool {
    fn go(uncovered: &mut Vec<u32>, sets: &[[u32; 3]]) -> bool {
        let Some(&x) = uncovered.iter().min() else { return true };
        for s in sets.iter().filter(|s| s.contains(&x)) {
            if s.iter().all(|e| uncovered.contains(e)) {
                let saved = uncovered.clone();
                uncovered.retain(|e| !s.contains(e));
                if go(uncovered, sets) {
                    return true;
                }
                *uncovered = saved;
            }
        }
        false
    }
    go(&mut inst.base().to_vec(), inst.sets())
}

fn covers(g: &GraphInstance, mask: u32) -> bool {
    let bit = |v: u32| g.vertices().iter().position(|&w| w == v).unwrap();
    g.edges().iter().all(|&(a, b)| mask >> bit(a) & 1 == 1 || mask >> bit(b) & 1 == 1)
}

/// Sizes of all vertex covers, by bitmask over the vertex list.
pub fn cover_sizes(g: &GraphInstance) -> Vec<usize> {
    let n = g.vertices().len();
    (0u32..1 << n).filter(|&m| covers(g, m)).map(|m| m.count_ones() as usize).collect()
}

pub fn min_cover(g: &GraphInstance) -> usize {
    cover_sizes(g).into_iter().min().unwrap()
}

/// `not_all_one` except that a lone candidate with at least one ballot wins.
pub struct LoneWinsNotAllOne(Arc<dyn ElectionSystem>);

impl ElectionSystem for LoneWinsNotAllOne {
    fn name(&self) -> &str {
        "not_all_one"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        if e.num_candidates() == 1 && e.num_voters() > 0 {
            return WinnerSet::from_vec(e.candidates().to_vec());
        }
        self.0.winners(e)
    }
}

/// The builtin registry with `not_all_one` replaced by [`LoneWinsNotAllOne`].
pub fn lone_wins_registry() -> Arc<SystemRegistry> {
    let mut r = SystemRegistry::builtin();
    let base = r.resolve(&SystemId::named("not_all_one")).unwrap();
    r.register(Arc::new(LoneWinsNotAllOne(base))).unwrap();
    Arc::new(r)
}
