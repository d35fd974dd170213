use std::fmt;

use rand::seq::SliceRandom;

use crate::election::{Election, WinnerSet};
use crate::error::Result;
use crate::systems::{SystemId, SystemRegistry};

use super::random::{random_candidates, random_sized_election, trial_rng, Bounds};
use super::rename::{Rename, RenamingMap};

/// An election and renaming under which winners do not follow the names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnonymityWitness {
    pub election: Election,
    pub map: RenamingMap,
    /// The renamed winners of the original election.
    pub expected: WinnerSet,
    /// The winners of the renamed election.
    pub actual: WinnerSet,
}

impl fmt::Display for AnonymityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ballots: Vec<String> = self.election.ballots().iter().map(|b| b.to_string()).collect();
        write!(f, "election {} [{}] renamed", crate::election::brace_ids(self.election.candidates()), ballots.join(", "))?;
        for &c in self.election.candidates() {
            if let Some(h) = self.map.get(c) {
                write!(f, " {c}->{h}")?;
            }
        }
        write!(f, ": expected {}, actual {}", self.expected, self.actual)
    }
}

/// Compares `system` on `election` and on its image under `map`.
pub fn anonymity_check(
    registry: &SystemRegistry,
    system: &SystemId,
    election: &Election,
    map: &RenamingMap,
) -> Result<Option<AnonymityWitness>> {
    let sys = registry.resolve(system)?;
    let renamed = election.renamed(map)?;
    let expected = sys.winners(election).map(|c| map.get(c).expect("checked"));
    let actual = sys.winners(&renamed);
    Ok((expected != actual).then(|| AnonymityWitness { election: election.clone(), map: map.clone(), expected, actual }))
}

/// Random elections within `bounds`, each renamed by a random injective map
/// into `0..2*name_range`; returns the first violation.
pub fn anonymity_falsify(
    registry: &SystemRegistry,
    system: &SystemId,
    trials: u64,
    bounds: Bounds,
    seed: u64,
) -> Result<Option<AnonymityWitness>> {
    registry.resolve(system)?;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let e = random_sized_election(&mut rng, bounds);
        let mut images = random_candidates(&mut rng, e.num_candidates(), 2 * bounds.name_range.max(e.num_candidates() as u32));
        images.shuffle(&mut rng);
        let map = RenamingMap::explicit(e.candidates().iter().copied().zip(images));
        if let Some(w) = anonymity_check(registry, system, &e, &map)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
