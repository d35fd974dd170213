use std::fmt;

use crate::control::{ControlInstance, ControlProblem, ControlType, Goal, TieModel};
use crate::election::{content_lines, parse_err, parse_id_list, split_key, Ballot, CandidateId, Election};
use crate::error::{Error, Result};
use crate::systems::SystemId;

/// Largest family the exact-cover oracle will enumerate.
pub const X3C_MAX_SETS: usize = 20;

/// Exact Cover by Three-Sets: a base set and an ordered family of 3-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct X3CInstance {
    base: Vec<u32>,
    sets: Vec<[u32; 3]>,
}

impl X3CInstance {
    /// Sorts the base set and each triple. The base must be nonempty with size
    /// divisible by 3, and every triple must be three distinct base elements.
    pub fn new(mut base: Vec<u32>, sets: Vec<[u32; 3]>) -> Result<Self> {
        base.sort_unstable();
        if base.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvariantViolation("base set has a repeated element".into()));
        }
        if base.is_empty() || base.len() % 3 != 0 {
            return Err(Error::InvariantViolation(format!("base size {} is not a positive multiple of 3", base.len())));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(Error::InvariantViolation(format!("set {s:?} has fewer than three elements")));
            }
            if let Some(x) = s.iter().find(|x| base.binary_search(x).is_err()) {
                return Err(Error::InvariantViolation(format!("set element {x} is not in the base set")));
            }
            sorted.push(s);
        }
        Ok(X3CInstance { base, sets: sorted })
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn sets(&self) -> &[[u32; 3]] {
        &self.sets
    }

    /// `base 1 2 3` followed by one `set a b c` line per triple.
    pub fn parse(text: &str) -> Result<Self> {
        let mut base = None;
        let mut sets = Vec::new();
        for (lineno, line) in content_lines(text) {
            let (key, rest) = split_key(line);
            let ids: Vec<u32> = parse_id_list(rest, lineno)?.into_iter().map(|c| c.0).collect();
            match key {
                "base" if base.is_none() => base = Some(ids),
                "base" => return Err(parse_err(lineno, "duplicate base line")),
                "set" => match ids.as_slice() {
                    &[a, b, c] => sets.push([a, b, c]),
                    _ => return Err(parse_err(lineno, "a set needs exactly three elements")),
                },
                _ => return Err(parse_err(lineno, format!("unknown directive {key:?}"))),
            }
        }
        let base = base.ok_or_else(|| parse_err(0, "missing base line"))?;
        X3CInstance::new(base, sets)
    }

    /// Whether some subfamily covers every base element exactly once.
    pub fn has_exact_cover(&self) -> Result<bool> {
        if self.sets.len() > X3C_MAX_SETS {
            return Err(Error::BudgetExceeded { required: 1 << self.sets.len(), budget: 1 << X3C_MAX_SETS });
        }
        let index = |x: u32| self.base.binary_search(&x).expect("validated");
        let masks: Vec<u64> = self.sets.iter().map(|s| s.iter().fold(0u64, |m, &x| m | 1 << index(x))).collect();
        let full = if self.base.len() == 64 { u64::MAX } else { (1u64 << self.base.len()) - 1 };
        'family: for pick in 0u32..1 << masks.len() {
            let mut covered = 0u64;
            for (i, &m) in masks.iter().enumerate() {
                if pick >> i & 1 == 1 {
                    if covered & m != 0 {
                        continue 'family;
                    }
                    covered |= m;
                }
            }
            if covered == full {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl fmt::Display for X3CInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base")?;
        for x in &self.base {
            write!(f, " {x}")?;
        }
        writeln!(f)?;
        for [a, b, c] in &self.sets {
            writeln!(f, "set {a} {b} {c}")?;
        }
        Ok(())
    }
}

/// Brute-force exact-cover oracle.
pub fn x3c_oracle(instance: &X3CInstance) -> Result<bool> {
    instance.has_exact_cover()
}

/// `first`, then every other candidate ascending.
fn ballot(first: &[u32], all: &[u32]) -> Ballot {
    let mut r: Vec<CandidateId> = first.iter().map(|&x| CandidateId(x)).collect();
    r.extend(all.iter().filter(|x| !first.contains(x)).map(|&x| CandidateId(x)));
    Ballot::new_unchecked(r)
}

/// Whether reducing to deleting voters has to clamp the limit because the
/// family is smaller than a third of the base set.
pub fn x3c_delete_voters_clamped(instance: &X3CInstance) -> bool {
    instance.sets.len() < instance.base.len() / 3
}

/// Destructive voter control for `not_all_one`, with `d` as the distinguished
/// candidate.
///
/// Fresh candidates `d, c1, c2, c3` are `max(B)+1, ...`. Supported targets are
/// DCDV, DCAV and DCPV-TE. When the family has fewer than `|B|/3` sets the
/// deletion limit would be negative; the instance is then emitted with `k = 0`
/// (and an empty family gets two `d`-first voters) so that its answer is NO.
pub fn reduce_x3c(instance: &X3CInstance, target: ControlProblem) -> Result<ControlInstance> {
    let system = SystemId::named("not_all_one");
    let d = instance.base.last().expect("nonempty base") + 1;
    let (c1, c2, c3) = (d + 1, d + 2, d + 3);
    let n = instance.sets.len();
    let third = instance.base.len() / 3;
    let set_ballot = |all: &[u32], s: &[u32; 3]| ballot(&[d, s[0], s[1], s[2]], all);
    let cid = |all: &[u32]| all.iter().map(|&x| CandidateId(x)).collect::<Vec<_>>();
    let dc = |kind| ControlProblem::new(Goal::Destructive, kind);

    if target == dc(ControlType::DeleteVoters) {
        let mut all = instance.base.clone();
        all.push(d);
        let mut ballots: Vec<Ballot> = instance.sets.iter().map(|s| set_ballot(&all, s)).collect();
        if n == 0 {
            ballots = vec![ballot(&[d], &all); 2];
        }
        let k = n.saturating_sub(third);
        let e = Election::new_unchecked(cid(&all), ballots);
        return ControlInstance::delete_voters(system, Goal::Destructive, CandidateId(d), e, k);
    }

    let mut all = instance.base.clone();
    all.extend([d, c1, c2, c3]);
    let head = ballot(&[d, c1, c2, c3], &all);
    if target == dc(ControlType::AddVoters) {
        let e = Election::new_unchecked(cid(&all), vec![head]);
        let w = instance.sets.iter().map(|s| set_ballot(&all, s)).collect();
        return ControlInstance::add_voters(system, Goal::Destructive, CandidateId(d), e, w, third.min(n));
    }
    if target == dc(ControlType::PartitionVoters(TieModel::TiesEliminate)) {
        let mut ballots = vec![head];
        ballots.extend(std::iter::repeat(ballot(&[c1], &all)).take(n));
        ballots.extend(instance.sets.iter().map(|s| set_ballot(&all, s)));
        let e = Election::new_unchecked(cid(&all), ballots);
        return ControlInstance::partition_voters(system, Goal::Destructive, CandidateId(d), e, TieModel::TiesEliminate);
    }
    Err(Error::InvariantViolation(format!("no exact-cover reduction to {target}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::ids;

    fn x3c(base: &[u32], sets: &[[u32; 3]]) -> X3CInstance {
        X3CInstance::new(base.to_vec(), sets.to_vec()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert!(x3c_oracle(&x3c(&[1, 2, 3], &[[1, 2, 3]])).unwrap());
        assert!(!x3c_oracle(&x3c(&[1, 2, 3, 4, 5, 6], &[[1, 2, 3], [1, 2, 4]])).unwrap());
        assert!(x3c_oracle(&x3c(&[1, 2, 3, 4, 5, 6], &[[1, 2, 3], [4, 5, 6], [1, 2, 4]])).unwrap());
        let big = X3CInstance::new((1..=3).collect(), vec![[1, 2, 3]; 21]).unwrap();
        assert!(matches!(x3c_oracle(&big), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn invalid_instances() {
        assert!(X3CInstance::new(vec![1, 2], vec![]).is_err());
        assert!(X3CInstance::new(vec![1, 2, 3], vec![[1, 2, 4]]).is_err());
        assert!(X3CInstance::new(vec![1, 2, 3], vec![[1, 1, 2]]).is_err());
        assert!(X3CInstance::parse("base 1 2 3\nset 1 2\n").is_err());
    }

    #[test]
    fn text_round_trip() {
        let i = x3c(&[1, 2, 3, 4, 5, 6], &[[3, 2, 1], [4, 5, 6]]);
        assert_eq!(X3CInstance::parse(&i.to_string()).unwrap(), i);
    }

    #[test]
    fn delete_voters_image() {
        let i = x3c(&[1, 2, 3], &[[1, 2, 3]]);
        let r = reduce_x3c(&i, "DCDV".parse().unwrap()).unwrap();
        assert_eq!(r.election().candidates(), ids(&[1, 2, 3, 4]).as_slice());
        assert_eq!(r.election().ballots(), &[Ballot::from_ids(&[4, 1, 2, 3]).unwrap()]);
        assert_eq!(r.limit(), Some(0));
        assert_eq!(r.distinguished(), CandidateId(4));
    }

    #[test]
    fn partition_voters_image_layout() {
        let i = x3c(&[1, 2, 3, 4, 5, 6], &[[1, 2, 3], [1, 2, 4]]);
        let r = reduce_x3c(&i, "DCPV-TE".parse().unwrap()).unwrap();
        let v = r.election().ballots();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0].ranking()[..4], ids(&[7, 8, 9, 10]));
        assert_eq!(v[1].top(), Some(CandidateId(8)));
        assert_eq!(v[4].ranking()[..5], ids(&[7, 1, 2, 4, 3]));
        assert!(reduce_x3c(&i, "DCPV-TP".parse().unwrap()).is_err());
    }
}
