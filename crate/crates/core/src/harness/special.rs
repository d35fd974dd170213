use std::fmt;

use crate::election::{Ballot, CandidateId, Election, WinnerSet};
use crate::error::{Error, Result};
use crate::systems::{SystemId, SystemRegistry};

/// The two-copies election built from a unique-winner election, and what
/// deleting either copy does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialReport {
    pub combined: Election,
    /// Translation from the original names to the copy's names.
    pub shift: u32,
    pub c: CandidateId,
    pub d: CandidateId,
    /// Winners of the renamed copy on its own; `{d}` unless the system is not anonymous.
    pub copy_winners: WinnerSet,
    pub combined_winners: WinnerSet,
    pub delete_copy_winners: WinnerSet,
    pub delete_original_winners: WinnerSet,
}

impl SpecialReport {
    /// Deleting the copy leaves `c` the unique winner.
    pub fn delete_copy_restores(&self) -> bool {
        self.delete_copy_winners.is_unique(self.c)
    }

    /// Deleting the original leaves `d` the unique winner.
    pub fn delete_original_restores(&self) -> bool {
        self.delete_original_winners.is_unique(self.d)
    }

    /// The renamed copy behaved like the original; `false` falsifies anonymity.
    pub fn anonymity_consistent(&self) -> bool {
        self.copy_winners.is_unique(self.d)
    }

    /// At most one of `c`, `d` wins the combined election, so at least one of
    /// the two deletions turns a non-unique-winner into the unique winner.
    pub fn deleting_witness(&self) -> Option<CandidateId> {
        if !self.combined_winners.is_unique(self.c) && self.delete_copy_restores() {
            Some(self.c)
        } else if !self.combined_winners.is_unique(self.d) && self.delete_original_restores() {
            Some(self.d)
        } else {
            None
        }
    }
}

impl fmt::Display for SpecialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "combined winners {}", self.combined_winners)?;
        writeln!(f, "delete copy: winners {} ({} unique)", self.delete_copy_winners, self.c)?;
        writeln!(f, "delete original: winners {} ({} unique)", self.delete_original_winners, self.d)?;
        write!(
            f,
            "anonymity hypothesis: {}",
            if self.anonymity_consistent() { "not falsified" } else { "falsified" }
        )
    }
}

/// Appends to each ballot its copy under `x -> x + max(C) + 1` and reports the
/// winners after deleting either half.
pub fn special_construction(
    registry: &SystemRegistry,
    system: &SystemId,
    election: &Election,
    c: CandidateId,
) -> Result<SpecialReport> {
    let sys = registry.resolve(system)?;
    if !sys.winners(election).is_unique(c) {
        return Err(Error::PreconditionFailed(format!("{c} is not the unique winner under {system}")));
    }
    let shift = election.candidates().last().expect("c is a candidate").0 + 1;
    let rename = |x: CandidateId| CandidateId(x.0 + shift);
    let copy = election.map_candidates(rename);
    let mut all = election.candidates().to_vec();
    all.extend_from_slice(copy.candidates());
    let ballots = election
        .ballots()
        .iter()
        .zip(copy.ballots())
        .map(|(v, w)| Ballot::new_unchecked(v.ranking().iter().chain(w.ranking()).copied().collect()))
        .collect();
    let combined = Election::new_unchecked(all, ballots);
    let d = rename(c);
    Ok(SpecialReport {
        copy_winners: sys.winners(&copy),
        combined_winners: sys.winners(&combined),
        delete_copy_winners: sys.winners(&combined.restrict(election.candidates())),
        delete_original_winners: sys.winners(&combined.restrict(copy.candidates())),
        combined,
        shift,
        c,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plurality_example() {
        let reg = SystemRegistry::builtin();
        let e = Election::from_ids(&[1, 2], &[&[1, 2]]).unwrap();
        let r = special_construction(&reg, &SystemId::named("plurality"), &e, CandidateId(1)).unwrap();
        assert_eq!(r.combined, Election::from_ids(&[1, 2, 4, 5], &[&[1, 2, 4, 5]]).unwrap());
        assert!(r.delete_copy_restores() && r.delete_original_restores());
        assert_eq!(r.deleting_witness(), Some(CandidateId(4)));
    }

    #[test]
    fn null_system_has_no_unique_winner() {
        let reg = SystemRegistry::builtin();
        let e = Election::from_ids(&[1, 2], &[&[1, 2]]).unwrap();
        let r = special_construction(&reg, &SystemId::named("e_null"), &e, CandidateId(1));
        assert!(matches!(r, Err(Error::PreconditionFailed(_))));
    }
}
