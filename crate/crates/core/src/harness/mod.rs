//! Empirical checks: renaming embeddings, anonymity falsification, the
//! two-copies construction, replays of the worked counterexamples, and the
//! exhaustive agreement grids.

mod anonymity;
mod checks;
mod duality;
pub mod grids;
mod inheritance;
mod random;
mod rename;
mod replay;
mod special;

pub use anonymity::{anonymity_check, anonymity_falsify, AnonymityWitness};
pub use checks::{limit_monotone, monotone_answers, witness_sound, GridReport};
pub use duality::{dual_of_add, dual_of_delete, duality_check};
pub use inheritance::{inheritance_check, InheritanceReport};
pub use random::{
    random_ballot, random_candidates, random_election, random_instance, random_sized_election, trial_rng, Bounds,
    DEFAULT_SEED,
};
pub use rename::{embed_rename, Rename, RenamingMap};
pub use replay::{replay_worked_examples, ScenarioResult};
pub use special::{special_construction, SpecialReport};

use crate::error::Result;

/// Calls `f` on every length-`len` sequence over `0..n` in lexicographic order,
/// or only on the non-decreasing ones when `multiset`.
pub fn enumerate_tuples(
    n: usize,
    len: usize,
    multiset: bool,
    mut f: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if len > 0 && n == 0 {
        return Ok(());
    }
    let mut idx = vec![0; len];
    loop {
        f(&idx)?;
        let Some(pos) = (0..len).rev().find(|&i| idx[i] + 1 < n) else {
            return Ok(());
        };
        idx[pos] += 1;
        let reset = if multiset { idx[pos] } else { 0 };
        for x in &mut idx[pos + 1..] {
            *x = reset;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(n: usize, len: usize, multiset: bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        enumerate_tuples(n, len, multiset, |t| {
            out.push(t.to_vec());
            Ok(())
        })
        .unwrap();
        out
    }

    #[test]
    fn tuples() {
        assert_eq!(collect(2, 2, false), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(collect(3, 2, true).len(), 6);
        assert_eq!(collect(5, 0, false), vec![Vec::<usize>::new()]);
        assert!(collect(0, 2, false).is_empty());
        assert_eq!(collect(24, 3, true).len(), 2600);
    }
}
