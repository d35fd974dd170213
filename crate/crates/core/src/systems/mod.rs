//! Election systems behind one trait, looked up by name in a [`SystemRegistry`].
//!
//! A [`SystemId`] names either a registered base system or a hybrid built from
//! registered base systems:
//!
//! ```text
//! plurality
//! hybrid:plurality,condorcet,not_all_one
//! hybrid_base:e_first,e_last;default=e_null
//! ```

mod appendix;
mod basic;
mod hybrid;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::election::{Election, WinnerSet};
use crate::error::{Error, Result};

pub use appendix::{
    triangular_roots, E0DFirst, E0Single, E0Solo, E1Prefix, E1Second, E1Tri, E1TriEven,
};
pub use basic::{Condorcet, EFirst, ELast, ENull, NotAllOne, Plurality};
pub use hybrid::{residue_route, Hybrid, Route};

/// A winner-set function over elections.
///
/// Implementations must be pure: the same election always yields the same
/// winners, and the winners are a subset of the election's candidates.
pub trait ElectionSystem: Send + Sync {
    fn name(&self) -> &str;

    fn winners(&self, election: &Election) -> WinnerSet;

    /// Never returns more than one winner.
    fn tie_free(&self) -> bool {
        false
    }

    fn as_hybrid(&self) -> Option<&Hybrid> {
        None
    }
}

/// Names of the systems registered by [`SystemRegistry::builtin`].
pub const BUILTIN_SYSTEMS: [&str; 13] = [
    "plurality",
    "condorcet",
    "not_all_one",
    "e_first",
    "e_last",
    "e_null",
    "e0_solo",
    "e1_prefix",
    "e0_single",
    "e1_tri",
    "e1_tri_even",
    "e0_dfirst",
    "e1_second",
];

/// Identifies a system: a registered base system or a hybrid of base systems.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemId {
    Named(String),
    /// Routes to constituent i when every candidate is congruent to i modulo k,
    /// otherwise to the last constituent.
    Hybrid(Vec<String>),
    /// As `Hybrid`, with an explicit fallback system.
    HybridBase { constituents: Vec<String>, default: String },
}

impl SystemId {
    pub fn named(name: &str) -> Self {
        SystemId::Named(name.to_string())
    }

    pub fn hybrid(names: &[&str]) -> Self {
        SystemId::Hybrid(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn is_hybrid(&self) -> bool {
        !matches!(self, SystemId::Named(_))
    }

    /// Constituent ids of a hybrid; empty for a base system.
    pub fn constituents(&self) -> Vec<SystemId> {
        match self {
            SystemId::Named(_) => Vec::new(),
            SystemId::Hybrid(c) | SystemId::HybridBase { constituents: c, .. } => {
                c.iter().map(|n| SystemId::Named(n.clone())).collect()
            }
        }
    }

    /// The system a hybrid falls back to on mixed residues or an empty candidate set.
    pub fn default_constituent(&self) -> Option<SystemId> {
        match self {
            SystemId::Named(_) => None,
            SystemId::Hybrid(c) => c.last().map(|n| SystemId::Named(n.clone())),
            SystemId::HybridBase { default, .. } => Some(SystemId::Named(default.clone())),
        }
    }

    /// The system an election over `candidates` is evaluated with.
    pub fn routed(&self, candidates: &[crate::election::CandidateId]) -> SystemId {
        match self {
            SystemId::Named(_) => self.clone(),
            _ => {
                let parts = self.constituents();
                match residue_route(candidates, parts.len()) {
                    Route::Constituent(i) => parts[i].clone(),
                    Route::Default => self.default_constituent().expect("hybrid has a default"),
                }
            }
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemId::Named(n) => f.write_str(n),
            SystemId::Hybrid(c) => write!(f, "hybrid:{}", c.join(",")),
            SystemId::HybridBase { constituents, default } => {
                write!(f, "hybrid_base:{};default={}", constituents.join(","), default)
            }
        }
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn parse_name_list(s: &str, whole: &str) -> Result<Vec<String>> {
    let names: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    if names.iter().any(|n| !valid_name(n)) {
        return Err(Error::InvalidSystemId(format!("bad constituent list in {whole:?}")));
    }
    if names.iter().any(|n| n == "hybrid" || n == "hybrid_base") {
        return Err(Error::InvalidSystemId(format!("nested hybrids are not allowed: {whole:?}")));
    }
    Ok(names)
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("hybrid_base:") {
            let (list, default) = rest
                .split_once(";default=")
                .ok_or_else(|| Error::InvalidSystemId(format!("{s:?} lacks ';default='")))?;
            let constituents = parse_name_list(list, s)?;
            let default = default.trim().to_string();
            if !valid_name(&default) {
                return Err(Error::InvalidSystemId(format!("bad default in {s:?}")));
            }
            Ok(SystemId::HybridBase { constituents, default })
        } else if let Some(rest) = s.strip_prefix("hybrid:") {
            Ok(SystemId::Hybrid(parse_name_list(rest, s)?))
        } else if valid_name(s) && s != "hybrid" && s != "hybrid_base" {
            Ok(SystemId::Named(s.to_string()))
        } else {
            Err(Error::InvalidSystemId(format!("{s:?}")))
        }
    }
}

/// Base systems by name. Immutable once shared.
#[derive(Clone)]
pub struct SystemRegistry {
    systems: BTreeMap<String, Arc<dyn ElectionSystem>>,
}

impl fmt::Debug for SystemRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.systems.keys()).finish()
    }
}

impl Default for SystemRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl SystemRegistry {
    pub fn empty() -> Self {
        SystemRegistry { systems: BTreeMap::new() }
    }

    /// Every system listed in [`BUILTIN_SYSTEMS`].
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        let all: [Arc<dyn ElectionSystem>; 13] = [
            Arc::new(Plurality),
            Arc::new(Condorcet),
            Arc::new(NotAllOne),
            Arc::new(EFirst),
            Arc::new(ELast),
            Arc::new(ENull),
            Arc::new(E0Solo),
            Arc::new(E1Prefix),
            Arc::new(E0Single),
            Arc::new(E1Tri),
            Arc::new(E1TriEven),
            Arc::new(E0DFirst),
            Arc::new(E1Second),
        ];
        for s in all {
            r.register(s).expect("builtin systems are not hybrids");
        }
        r
    }

    /// Adds (or replaces) a base system under its own name.
    pub fn register(&mut self, system: Arc<dyn ElectionSystem>) -> Result<()> {
        if system.as_hybrid().is_some() {
            return Err(Error::InvalidSystemId(format!(
                "{} is a hybrid; register its constituents instead",
                system.name()
            )));
        }
        self.systems.insert(system.name().to_string(), system);
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.systems.keys().map(String::as_str)
    }

    fn base(&self, name: &str) -> Result<Arc<dyn ElectionSystem>> {
        self.systems.get(name).cloned().ok_or_else(|| Error::UnknownSystem(name.to_string()))
    }

    pub fn resolve(&self, id: &SystemId) -> Result<Arc<dyn ElectionSystem>> {
        match id {
            SystemId::Named(n) => self.base(n),
            SystemId::Hybrid(c) | SystemId::HybridBase { constituents: c, .. } => {
                if c.is_empty() {
                    return Err(Error::InvalidSystemId("hybrid needs at least one constituent".into()));
                }
                let parts = c.iter().map(|n| self.base(n)).collect::<Result<Vec<_>>>()?;
                let default = match id.default_constituent() {
                    Some(SystemId::Named(d)) => self.base(&d)?,
                    _ => unreachable!("hybrid ids always have a named default"),
                };
                Ok(Arc::new(Hybrid::new(id.to_string(), parts, default)))
            }
        }
    }

    /// Shorthand for `resolve(id)?.winners(election)`.
    pub fn winners(&self, id: &SystemId, election: &Election) -> Result<WinnerSet> {
        Ok(self.resolve(id)?.winners(election))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_id_grammar_roundtrips() {
        for s in [
            "plurality",
            "e1_tri_even",
            "hybrid:plurality,condorcet,not_all_one",
            "hybrid:e_first",
            "hybrid_base:e_first,e_last;default=e_null",
        ] {
            let id: SystemId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        assert_eq!("hybrid:a,b".parse::<SystemId>().unwrap(), SystemId::hybrid(&["a", "b"]));
    }

    #[test]
    fn system_id_rejects_bad_strings() {
        for s in ["", "hybrid:", "hybrid:a,,b", "hybrid:a,hybrid", "hybrid_base:a,b", "has space", "hybrid"] {
            assert!(s.parse::<SystemId>().is_err(), "{s:?}");
        }
    }

    #[test]
    fn registry_resolves_builtins_and_rejects_unknown() {
        let r = SystemRegistry::builtin();
        for name in BUILTIN_SYSTEMS {
            assert_eq!(r.resolve(&SystemId::named(name)).unwrap().name(), name);
        }
        assert!(matches!(r.resolve(&SystemId::named("borda")), Err(Error::UnknownSystem(_))));
        assert!(r.resolve(&SystemId::hybrid(&["plurality", "borda"])).is_err());
        assert!(r.resolve(&SystemId::Hybrid(vec![])).is_err());
    }

    #[test]
    fn registry_refuses_hybrids_as_base_systems() {
        let mut r = SystemRegistry::builtin();
        let h = r.resolve(&SystemId::hybrid(&["plurality", "condorcet"])).unwrap();
        assert!(r.register(h).is_err());
    }

    #[test]
    fn routed_follows_residues() {
        use crate::election::ids;
        let h = SystemId::hybrid(&["plurality", "condorcet"]);
        assert_eq!(h.routed(&ids(&[0, 2])), SystemId::named("plurality"));
        assert_eq!(h.routed(&ids(&[1, 3])), SystemId::named("condorcet"));
        assert_eq!(h.routed(&ids(&[1, 2])), SystemId::named("condorcet"));
        assert_eq!(h.routed(&[]), SystemId::named("condorcet"));
        let hb: SystemId = "hybrid_base:plurality,condorcet;default=e_null".parse().unwrap();
        assert_eq!(hb.routed(&ids(&[1, 2])), SystemId::named("e_null"));
    }
}
