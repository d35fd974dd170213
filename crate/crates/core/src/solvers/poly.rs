//! Polynomial-time deciders for the small artificial systems.

use crate::control::{ControlAction, ControlInstance, ControlType, Evaluator, Goal, TieModel};
use crate::election::{CandidateId, Election};
use crate::error::{Error, Result};
use crate::systems::{triangular_roots, E1Prefix, E1Second, E1Tri, E1TriEven, E0DFirst, ElectionSystem, SystemId};

use super::enumerate::Combinations;
use super::{Decider, Decision};

fn wrong(algorithm: &'static str, inst: &ControlInstance) -> Error {
    Error::WrongSystem { algorithm, instance: format!("{} on {}", inst.problem(), inst.system()) }
}

fn system_name(inst: &ControlInstance) -> Option<&str> {
    match inst.system() {
        SystemId::Named(n) => Some(n.as_str()),
        _ => None,
    }
}

fn others(inst: &ControlInstance) -> Vec<CandidateId> {
    let c = inst.distinguished();
    inst.election().candidates().iter().copied().filter(|&x| x != c).collect()
}

fn isolate(inst: &ControlInstance) -> ControlAction {
    ControlAction::PartitionCandidates { first: vec![inst.distinguished()], second: others(inst) }
}

/// Candidates ranked above `c` on `ballot`.
fn above(ballot: &crate::election::Ballot, c: CandidateId) -> Vec<CandidateId> {
    ballot.ranking().iter().copied().take_while(|&x| x != c).collect()
}

/// Constructive deleting candidates for `e1_prefix`.
///
/// Everything voter 1 prefers to `c` must go, and all but at most one of what
/// voter 2 prefers to `c`; with exactly one deletion too few, try keeping each
/// of voter 2's candidates in turn.
#[derive(Clone, Copy, Debug, Default)]
pub struct E1PrefixDeleteCandidates;

impl Decider for E1PrefixDeleteCandidates {
    fn name(&self) -> &str {
        "e1_prefix-ccdc"
    }

    fn decide(&self, inst: &ControlInstance) -> Result<Decision> {
        let ControlType::DeleteCandidates = inst.control_type() else {
            return Err(wrong("e1_prefix-ccdc", inst));
        };
        if system_name(inst) != Some("e1_prefix") || inst.goal() != Goal::Constructive {
            return Err(wrong("e1_prefix-ccdc", inst));
        }
        let k = inst.limit().unwrap_or(0);
        let e = inst.election();
        let c = inst.distinguished();
        let v = e.ballots();
        if v.len() < 2 {
            return Ok(Decision::no());
        }
        let c2 = above(&v[1], c);
        let mut both = above(&v[0], c);
        both.extend(c2.iter().copied());
        both.sort_unstable();
        both.dedup();
        if both.len() <= k {
            return Ok(Decision::yes(ControlAction::DeleteCandidates(both)));
        }
        if both.len() > k + 1 {
            return Ok(Decision::no());
        }
        let mut c2_sorted = c2;
        c2_sorted.sort_unstable();
        for d in c2_sorted {
            let keep: Vec<CandidateId> =
                e.candidates().iter().copied().filter(|x| *x == d || both.binary_search(x).is_err()).collect();
            if E1Prefix.winners(&e.restrict(&keep)).is_unique(c) {
                let deleted = both.iter().copied().filter(|&x| x != d).collect();
                return Ok(Decision::yes(ControlAction::DeleteCandidates(deleted)));
            }
        }
        Ok(Decision::no())
    }
}

/// Constructive run-off partition of candidates for `e1_tri`: after the voter-count
/// gate, only the partition `({c}, C - {c})` needs checking.
#[derive(Clone, Copy, Debug, Default)]
pub struct E1TriRunoffPartition;

impl Decider for E1TriRunoffPartition {
    fn name(&self) -> &str {
        "e1_tri-ccrpc"
    }

    fn decide(&self, inst: &ControlInstance) -> Result<Decision> {
        let ControlType::RunoffPartitionCandidates(tie) = inst.control_type() else {
            return Err(wrong("e1_tri-ccrpc", inst));
        };
        if system_name(inst) != Some("e1_tri") || inst.goal() != Goal::Constructive {
            return Err(wrong("e1_tri-ccrpc", inst));
        }
        if triangular_roots(inst.election().num_voters()).is_empty() {
            return Ok(Decision::no());
        }
        let c = inst.distinguished();
        let rest = others(inst);
        let mut ev = Evaluator::with_system(inst, std::sync::Arc::new(E1Tri));
        let w = ev.partition_candidates_unchecked(&[c], &rest, true, tie);
        Ok(if ev.met(&w) { Decision::yes(isolate(inst)) } else { Decision::no() })
    }
}

/// Constructive partition of candidates for `e1_tri_even`: the partition
/// `(C - {c}, {c})`, then the few partitions whose part sizes allow `c` to win.
#[derive(Clone, Copy, Debug, Default)]
pub struct E1TriEvenPartition;

impl E1TriEvenPartition {
    fn try_partition(
        ev: &mut Evaluator<'_>,
        tie: TieModel,
        first: &[CandidateId],
        second: &[CandidateId],
    ) -> Option<ControlAction> {
        let w = ev.partition_candidates_unchecked(first, second, false, tie);
        ev.met(&w).then(|| ControlAction::PartitionCandidates { first: first.to_vec(), second: second.to_vec() })
    }
}

impl Decider for E1TriEvenPartition {
    fn name(&self) -> &str {
        "e1_tri_even-ccpc"
    }

    fn decide(&self, inst: &ControlInstance) -> Result<Decision> {
        let ControlType::PartitionCandidates(tie) = inst.control_type() else {
            return Err(wrong("e1_tri_even-ccpc", inst));
        };
        if system_name(inst) != Some("e1_tri_even") || inst.goal() != Goal::Constructive {
            return Err(wrong("e1_tri_even-ccpc", inst));
        }
        let Some(n) = triangular_roots(inst.election().num_voters()).into_iter().find(|n| n % 2 == 0) else {
            return Ok(Decision::no());
        };
        let n = n as usize;
        let c = inst.distinguished();
        let rest = others(inst);
        let mut ev = Evaluator::with_system(inst, std::sync::Arc::new(E1TriEven));
        if let Some(w) = Self::try_partition(&mut ev, tie, &rest, &[c]) {
            return Ok(Decision::yes(w));
        }
        let m = inst.election().num_candidates();
        if m != 2 && m != n / 2 + 3 {
            return Ok(Decision::no());
        }
        // (c in first part, sizes of the part holding c)
        let cases: [(bool, &[usize]); 2] = [(true, &[1, n / 2 + 2]), (false, &[1, n / 2 + 2, n / 2 + 1])];
        let (mut with_c, mut without_c) = (Vec::new(), Vec::new());
        for (c_first, sizes) in cases {
            let mut tried = Vec::new();
            for &size in sizes {
                if size == 0 || size > m || tried.contains(&size) {
                    continue;
                }
                tried.push(size);
                for pick in Combinations::new(rest.len(), size - 1) {
                    with_c.clear();
                    with_c.push(c);
                    with_c.extend(pick.iter().map(|&i| rest[i]));
                    with_c.sort_unstable();
                    without_c.clear();
                    without_c.extend(rest.iter().copied().filter(|x| with_c.binary_search(x).is_err()));
                    let (first, second) = if c_first { (&with_c, &without_c) } else { (&without_c, &with_c) };
                    if let Some(w) = Self::try_partition(&mut ev, tie, first, second) {
                        return Ok(Decision::yes(w));
                    }
                }
            }
        }
        Ok(Decision::no())
    }
}

/// Destructive deleting candidates, partition and run-off partition of
/// candidates for `e0_dfirst` and `e1_second`, by direct characterization.
#[derive(Clone, Copy, Debug, Default)]
pub struct DestructivePoly;

impl DestructivePoly {
    fn e1_second(inst: &ControlInstance) -> Decision {
        if inst.control_type() != ControlType::DeleteCandidates {
            return Decision::yes(isolate(inst));
        }
        let e: &Election = inst.election();
        let c = inst.distinguished();
        let v = e.ballots();
        let m = e.num_candidates();
        let Some(first) = v.first() else {
            return Decision::yes(ControlAction::DeleteCandidates(vec![]));
        };
        let second_is_c = first.ranking().get(1) == Some(&c);
        let blocked = v.len() == 4 * m * m && v.iter().all(|b| b.position(c).is_some_and(|p| p < 2));
        if !second_is_c || blocked {
            return Decision::yes(ControlAction::DeleteCandidates(vec![]));
        }
        if inst.limit().unwrap_or(0) > 0 {
            let top = first.top().expect("c is ranked second, so something is first");
            return Decision::yes(ControlAction::DeleteCandidates(vec![top]));
        }
        debug_assert!(E1Second.winners(e).is_unique(c));
        Decision::no()
    }

    fn e0_dfirst(inst: &ControlInstance) -> Decision {
        let e = inst.election();
        let c = inst.distinguished();
        let is_dc = inst.control_type() == ControlType::DeleteCandidates;
        let not_first = e.ballots().first().map_or(true, |b| b.top() != Some(c));
        if not_first {
            return Decision::yes(if is_dc { ControlAction::DeleteCandidates(vec![]) } else { isolate(inst) });
        }
        if e.num_voters() != 1 {
            debug_assert!(E0DFirst.winners(e).is_unique(c));
            return Decision::no();
        }
        if !is_dc {
            return Decision::yes(isolate(inst));
        }
        // only c alone with the single voter is winnerless
        let rest = others(inst);
        if rest.len() <= inst.limit().unwrap_or(0) {
            Decision::yes(ControlAction::DeleteCandidates(rest))
        } else {
            Decision::no()
        }
    }
}

impl Decider for DestructivePoly {
    fn name(&self) -> &str {
        "destructive-poly"
    }

    fn decide(&self, inst: &ControlInstance) -> Result<Decision> {
        let kind_ok = matches!(
            inst.control_type(),
            ControlType::DeleteCandidates
                | ControlType::PartitionCandidates(_)
                | ControlType::RunoffPartitionCandidates(_)
        );
        if !kind_ok || inst.goal() != Goal::Destructive {
            return Err(wrong("destructive-poly", inst));
        }
        match system_name(inst) {
            Some("e1_second") => Ok(Self::e1_second(inst)),
            Some("e0_dfirst") => Ok(Self::e0_dfirst(inst)),
            _ => Err(wrong("destructive-poly", inst)),
        }
    }
}
