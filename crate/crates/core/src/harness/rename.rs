use std::collections::BTreeMap;

use crate::control::ControlInstance;
use crate::election::{CandidateId, Election};
use crate::error::{Error, Result};

/// A renaming of candidates: the affine `c -> k*c + i`, or an explicit table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RenamingMap {
    Affine { k: u32, i: u32 },
    Explicit(BTreeMap<CandidateId, CandidateId>),
}

impl RenamingMap {
    pub fn affine(k: u32, i: u32) -> Result<Self> {
        if k == 0 || i >= k {
            return Err(Error::InvariantViolation(format!("affine renaming needs 0 <= i < k, got k={k} i={i}")));
        }
        Ok(RenamingMap::Affine { k, i })
    }

    pub fn explicit(pairs: impl IntoIterator<Item = (CandidateId, CandidateId)>) -> Self {
        RenamingMap::Explicit(pairs.into_iter().collect())
    }

    /// The image of `c`, or `None` if an explicit table has no entry for it.
    pub fn get(&self, c: CandidateId) -> Option<CandidateId> {
        match self {
            RenamingMap::Affine { k, i } => Some(CandidateId(k * c.0 + i)),
            RenamingMap::Explicit(m) => m.get(&c).copied(),
        }
    }

    /// Checks the map is defined and injective on `candidates`.
    pub fn check(&self, candidates: &[CandidateId]) -> Result<()> {
        let mut seen = BTreeMap::new();
        for &c in candidates {
            let image = self.get(c).ok_or(Error::NonInjectiveMap(c))?;
            if seen.insert(image, c).is_some() {
                return Err(Error::NonInjectiveMap(c));
            }
        }
        Ok(())
    }

    fn apply(&self, c: CandidateId) -> CandidateId {
        self.get(c).expect("checked")
    }
}

/// Things whose candidates can be renamed.
pub trait Rename: Sized {
    fn renamed(&self, map: &RenamingMap) -> Result<Self>;
}

impl Rename for Election {
    fn renamed(&self, map: &RenamingMap) -> Result<Self> {
        map.check(self.candidates())?;
        Ok(self.map_candidates(|c| map.apply(c)))
    }
}

impl Rename for ControlInstance {
    fn renamed(&self, map: &RenamingMap) -> Result<Self> {
        let mut all = self.election().candidates().to_vec();
        all.push(self.distinguished());
        all.sort_unstable();
        all.dedup();
        map.check(&all)?;
        self.map_candidates(|c| map.apply(c))
    }
}

/// Renames every candidate id in `obj` with `map`.
pub fn embed_rename<T: Rename>(obj: &T, map: &RenamingMap) -> Result<T> {
    obj.renamed(map)
}
