use std::ops::ControlFlow;
use std::sync::Arc;

use crate::control::{ControlAction, ControlInstance, ControlType, Evaluator, Goal, InstanceKind};
use crate::election::CandidateId;
use crate::error::{Error, Result};
use crate::systems::SystemRegistry;

use super::enumerate::for_each_subset_upto;
use super::{Decider, Decision};

/// 2^24 actions.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn subsets_upto(n: usize, k: usize) -> u128 {
    (0..=k.min(n)).fold(0u128, |acc, s| acc.saturating_add(binomial(n as u128, s as u128)))
}

fn pow2(n: usize) -> u128 {
    if n >= 127 {
        u128::MAX
    } else {
        1u128 << n
    }
}

/// Number of legal actions the exhaustive search would visit.
pub fn search_space(instance: &ControlInstance) -> u128 {
    let m = instance.base_candidates().len();
    let v = instance.election().num_voters();
    match instance.kind() {
        InstanceKind::AddCandidates { spoilers } => pow2(spoilers.len()),
        InstanceKind::DeleteCandidates { limit } => {
            let deletable = if instance.goal() == Goal::Destructive { m - 1 } else { m };
            subsets_upto(deletable, *limit)
        }
        InstanceKind::PartitionCandidates { .. } | InstanceKind::RunoffPartitionCandidates { .. } => pow2(m),
        InstanceKind::AddVoters { unregistered, limit } => subsets_upto(unregistered.len(), *limit),
        InstanceKind::DeleteVoters { limit } => subsets_upto(v, *limit),
        InstanceKind::PartitionVoters { .. } => pow2(v),
    }
}

/// Tries every legal action in a fixed order and returns the first that works.
///
/// Subset actions are visited by size and then lexicographically (over sorted
/// candidates or ballot indices). Partitions are visited by ascending mask: for
/// candidates, bit j puts the j-th smallest candidate in the first part; for
/// voters, bit i puts ballot i in the first part.
#[derive(Clone, Debug)]
pub struct BruteForce {
    systems: Arc<SystemRegistry>,
    budget: u128,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce::new(Arc::new(SystemRegistry::builtin()))
    }
}

impl BruteForce {
    pub fn new(systems: Arc<SystemRegistry>) -> Self {
        BruteForce { systems, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    pub fn systems(&self) -> &Arc<SystemRegistry> {
        &self.systems
    }

    fn search(&self, inst: &ControlInstance) -> Result<Option<ControlAction>> {
        let required = search_space(inst);
        if required > self.budget {
            return Err(Error::BudgetExceeded { required, budget: self.budget });
        }
        let mut ev = Evaluator::new(inst, &self.systems)?;
        let c = inst.distinguished();
        let pick = |pool: &[CandidateId], idx: &[usize]| -> Vec<CandidateId> { idx.iter().map(|&i| pool[i]).collect() };
        let found = match inst.kind() {
            InstanceKind::AddCandidates { spoilers } => {
                let mut buf = Vec::new();
                for_each_subset_upto(spoilers.len(), spoilers.len(), |idx| {
                    buf.clear();
                    buf.extend(idx.iter().map(|&i| spoilers[i]));
                    let w = ev.add_candidates_unchecked(&buf);
                    if ev.met(&w) {
                        ControlFlow::Break(ControlAction::AddCandidates(buf.clone()))
                    } else {
                        ControlFlow::Continue(())
                    }
                })
            }
            InstanceKind::DeleteCandidates { limit } => {
                let pool: Vec<CandidateId> = match inst.goal() {
                    Goal::Destructive => ev.base_candidates().iter().copied().filter(|&x| x != c).collect(),
                    Goal::Constructive => ev.base_candidates().to_vec(),
                };
                let mut buf = Vec::new();
                for_each_subset_upto(pool.len(), *limit, |idx| {
                    buf.clear();
                    buf.extend(idx.iter().map(|&i| pool[i]));
                    let w = ev.delete_candidates_unchecked(&buf);
                    if ev.met(&w) {
                        ControlFlow::Break(ControlAction::DeleteCandidates(pick(&pool, idx)))
                    } else {
                        ControlFlow::Continue(())
                    }
                })
            }
            InstanceKind::PartitionCandidates { tie } | InstanceKind::RunoffPartitionCandidates { tie } => {
                let runoff = matches!(inst.control_type(), ControlType::RunoffPartitionCandidates(_));
                let pool = ev.base_candidates().to_vec();
                let (mut a, mut b) = (Vec::new(), Vec::new());
                let mut hit = None;
                for mask in 0..pow2(pool.len()) {
                    a.clear();
                    b.clear();
                    for (j, &x) in pool.iter().enumerate() {
                        if mask >> j & 1 == 1 {
                            a.push(x);
                        } else {
                            b.push(x);
                        }
                    }
                    let w = ev.partition_candidates_unchecked(&a, &b, runoff, *tie);
                    if ev.met(&w) {
                        hit = Some(ControlAction::PartitionCandidates { first: a.clone(), second: b.clone() });
                        break;
                    }
                }
                hit
            }
            InstanceKind::AddVoters { unregistered, limit } => for_each_subset_upto(unregistered.len(), *limit, |idx| {
                let w = ev.add_voters_unchecked(idx);
                if ev.met(&w) {
                    ControlFlow::Break(ControlAction::AddVoters(idx.to_vec()))
                } else {
                    ControlFlow::Continue(())
                }
            }),
            InstanceKind::DeleteVoters { limit } => {
                for_each_subset_upto(inst.election().num_voters(), *limit, |idx| {
                    let w = ev.delete_voters_unchecked(idx);
                    if ev.met(&w) {
                        ControlFlow::Break(ControlAction::DeleteVoters(idx.to_vec()))
                    } else {
                        ControlFlow::Continue(())
                    }
                })
            }
            InstanceKind::PartitionVoters { tie } => {
                let n = inst.election().num_voters();
                let mut sides = vec![false; n];
                let mut hit = None;
                for mask in 0..pow2(n) {
                    for (i, s) in sides.iter_mut().enumerate() {
                        *s = mask >> i & 1 == 1;
                    }
                    let w = ev.partition_voters_unchecked(&sides, *tie);
                    if ev.met(&w) {
                        hit = Some(ControlAction::PartitionVoters { in_first: sides.clone() });
                        break;
                    }
                }
                hit
            }
        };
        Ok(found)
    }
}

impl Decider for BruteForce {
    fn name(&self) -> &str {
        "brute-force"
    }

    fn decide(&self, instance: &ControlInstance) -> Result<Decision> {
        Ok(match self.search(instance)? {
            Some(w) => Decision::yes(w),
            None => Decision::no(),
        })
    }
}
