use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::control::{ControlInstance, ControlProblem, ControlType};
use crate::election::{Ballot, CandidateId, Election};
use crate::systems::SystemId;

/// Seed used by every randomized suite unless overridden.
pub const DEFAULT_SEED: u64 = 24301;

/// The generator for trial `trial` of a run seeded with `seed`; each trial gets
/// its own ChaCha stream, so trials are independent of evaluation order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Size limits for generated elections. Names are drawn from `0..name_range`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_candidates: usize,
    pub max_voters: usize,
    pub name_range: u32,
}

impl Bounds {
    pub const fn new(max_candidates: usize, max_voters: usize, name_range: u32) -> Self {
        Bounds { max_candidates, max_voters, name_range }
    }
}

/// `m` distinct names from `0..range`, sorted.
pub fn random_candidates(rng: &mut impl Rng, m: usize, range: u32) -> Vec<CandidateId> {
    let mut v: Vec<CandidateId> =
        index::sample(rng, range as usize, m).into_iter().map(|i| CandidateId(i as u32)).collect();
    v.sort_unstable();
    v
}

pub fn random_ballot(rng: &mut impl Rng, candidates: &[CandidateId]) -> Ballot {
    let mut r = candidates.to_vec();
    r.shuffle(rng);
    Ballot::new_unchecked(r)
}

pub fn random_election(rng: &mut impl Rng, candidates: &[CandidateId], voters: usize) -> Election {
    let ballots = (0..voters).map(|_| random_ballot(rng, candidates)).collect();
    Election::new_unchecked(candidates.to_vec(), ballots)
}

/// Uniform candidate count in `1..=max`, voter count in `0..=max`, ballots uniform.
pub fn random_sized_election(rng: &mut impl Rng, bounds: Bounds) -> Election {
    let m = rng.gen_range(1..=bounds.max_candidates);
    let cands = random_candidates(rng, m, bounds.name_range.max(m as u32));
    let n = rng.gen_range(0..=bounds.max_voters);
    random_election(rng, &cands, n)
}

/// A random instance of `problem` for `system`. For adding candidates, each
/// candidate other than `c` is a spoiler with probability 1/2; limits are
/// uniform over their legal range.
pub fn random_instance(rng: &mut impl Rng, system: &SystemId, problem: ControlProblem, bounds: Bounds) -> ControlInstance {
    let e = random_sized_election(rng, bounds);
    let c = *e.candidates().choose(rng).expect("at least one candidate");
    let m = e.num_candidates();
    let n = e.num_voters();
    let (limit, spoilers, unregistered) = match problem.kind {
        ControlType::AddCandidates => {
            let spoilers = e.candidates().iter().copied().filter(|&d| d != c && rng.gen_bool(0.5)).collect();
            (0, spoilers, vec![])
        }
        ControlType::DeleteCandidates => (rng.gen_range(0..=m), vec![], vec![]),
        ControlType::AddVoters => {
            let w: Vec<Ballot> =
                (0..rng.gen_range(0..=bounds.max_voters)).map(|_| random_ballot(rng, e.candidates())).collect();
            (rng.gen_range(0..=w.len()), vec![], w)
        }
        ControlType::DeleteVoters => (rng.gen_range(0..=n), vec![], vec![]),
        _ => (0, vec![], vec![]),
    };
    ControlInstance::for_problem(problem, system.clone(), c, e, limit, spoilers, unregistered)
        .expect("generated instances are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trials_are_reproducible_and_distinct() {
        let b = Bounds::new(4, 5, 8);
        let a1 = random_sized_election(&mut trial_rng(7, 3), b);
        let a2 = random_sized_election(&mut trial_rng(7, 3), b);
        assert_eq!(a1, a2);
        let others: Vec<Election> = (0..20).map(|t| random_sized_election(&mut trial_rng(7, t), b)).collect();
        assert!(others.iter().any(|e| *e != a1));
    }

    #[test]
    fn instances_respect_bounds() {
        let sys = SystemId::named("plurality");
        for (t, p) in ControlProblem::all().into_iter().enumerate() {
            let i = random_instance(&mut trial_rng(1, t as u64), &sys, p, Bounds::new(4, 5, 8));
            assert!(i.election().num_candidates() <= 4 && i.election().num_voters() <= 5);
            assert_eq!(i.problem(), p);
        }
    }
}
