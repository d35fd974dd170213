use crate::election::{CandidateId, Election, WinnerSet};

use super::ElectionSystem;

fn index_of(candidates: &[CandidateId], c: CandidateId) -> usize {
    candidates.binary_search(&c).expect("ballot ranks only election candidates")
}

/// Candidates ranked first most often. With no ballots every candidate ties at zero and wins.
#[derive(Clone, Copy, Debug, Default)]
pub struct Plurality;

impl ElectionSystem for Plurality {
    fn name(&self) -> &str {
        "plurality"
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        let cands = e.candidates();
        let mut firsts = vec![0usize; cands.len()];
        for b in e.ballots() {
            if let Some(top) = b.top() {
                firsts[index_of(cands, top)] += 1;
            }
        }
        let Some(&best) = firsts.iter().max() else {
            return WinnerSet::empty();
        };
        WinnerSet::from_vec(
            cands.iter().zip(&firsts).filter(|(_, &n)| n == best).map(|(&c, _)| c).collect(),
        )
    }
}

/// The candidate beating every other candidate head-to-head by a strict majority.
#[derive(Clone, Copy, Debug, Default)]
pub struct Condorcet;

impl ElectionSystem for Condorcet {
    fn name(&self) -> &str {
        "condorcet"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        let cands = e.candidates();
        let m = cands.len();
        let n = e.num_voters();
        // wins[a * m + b] = ballots ranking a above b
        let mut wins = vec![0usize; m * m];
        let mut pos = vec![0usize; m];
        for b in e.ballots() {
            for (p, &c) in b.ranking().iter().enumerate() {
                pos[index_of(cands, c)] = p;
            }
            for a in 0..m {
                for x in 0..m {
                    if pos[a] < pos[x] {
                        wins[a * m + x] += 1;
                    }
                }
            }
        }
        for a in 0..m {
            if (0..m).all(|x| x == a || 2 * wins[a * m + x] > n) {
                return WinnerSet::single(cands[a]);
            }
        }
        WinnerSet::empty()
    }
}

/// One point for each of a ballot's top four candidates. `c` wins when a strict
/// majority ranks it first, unless every other candidate has exactly one point.
#[derive(Clone, Copy, Debug, Default)]
pub struct NotAllOne;

impl ElectionSystem for NotAllOne {
    fn name(&self) -> &str {
        "not_all_one"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        let cands = e.candidates();
        let n = e.num_voters();
        let mut score = vec![0usize; cands.len()];
        let mut firsts = vec![0usize; cands.len()];
        for b in e.ballots() {
            for (p, &c) in b.ranking().iter().take(4).enumerate() {
                let i = index_of(cands, c);
                score[i] += 1;
                if p == 0 {
                    firsts[i] += 1;
                }
            }
        }
        let Some(w) = (0..cands.len()).find(|&i| 2 * firsts[i] > n) else {
            return WinnerSet::empty();
        };
        let all_one = (0..cands.len()).all(|i| i == w || score[i] == 1);
        if all_one {
            WinnerSet::empty()
        } else {
            WinnerSet::single(cands[w])
        }
    }
}

/// With exactly one ballot, its top candidate wins; otherwise nobody does.
#[derive(Clone, Copy, Debug, Default)]
pub struct EFirst;

impl ElectionSystem for EFirst {
    fn name(&self) -> &str {
        "e_first"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        match e.ballots() {
            [only] => only.top().map_or_else(WinnerSet::empty, WinnerSet::single),
            _ => WinnerSet::empty(),
        }
    }
}

/// With exactly one ballot, its bottom candidate wins; otherwise nobody does.
#[derive(Clone, Copy, Debug, Default)]
pub struct ELast;

impl ElectionSystem for ELast {
    fn name(&self) -> &str {
        "e_last"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        match e.ballots() {
            [only] => only.bottom().map_or_else(WinnerSet::empty, WinnerSet::single),
            _ => WinnerSet::empty(),
        }
    }
}

/// Nobody ever wins.
#[derive(Clone, Copy, Debug, Default)]
pub struct ENull;

impl ElectionSystem for ENull {
    fn name(&self) -> &str {
        "e_null"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, _: &Election) -> WinnerSet {
        WinnerSet::empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::ids;

    fn run(s: &dyn ElectionSystem, c: &[u32], v: &[&[u32]]) -> Vec<u32> {
        let e = Election::from_ids(c, v).unwrap();
        s.winners(&e).iter().map(|c| c.0).collect()
    }

    #[test]
    fn plurality_examples() {
        assert_eq!(run(&Plurality, &[1, 2, 3], &[&[1, 2, 3], &[1, 3, 2], &[2, 1, 3]]), [1]);
        assert_eq!(run(&Plurality, &[1, 2], &[&[1, 2], &[2, 1]]), [1, 2]);
        assert_eq!(run(&Plurality, &[1], &[]), [1]);
        assert_eq!(run(&Plurality, &[], &[&[], &[]]), [] as [u32; 0]);
    }

    #[test]
    fn condorcet_examples() {
        assert_eq!(run(&Condorcet, &[1, 2], &[&[1, 2]]), [1]);
        assert!(run(&Condorcet, &[1, 2, 3], &[&[1, 2, 3], &[2, 3, 1], &[3, 1, 2]]).is_empty());
        assert!(run(&Condorcet, &[1, 2], &[&[1, 2], &[2, 1]]).is_empty());
        assert_eq!(run(&Condorcet, &[7], &[]), [7]);
        assert!(run(&Condorcet, &[1, 2], &[]).is_empty());
    }

    #[test]
    fn not_all_one_examples() {
        assert!(run(&NotAllOne, &[0, 1, 2, 3], &[&[0, 1, 2, 3]]).is_empty());
        assert_eq!(
            run(&NotAllOne, &[0, 1, 2, 3, 4], &[&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4], &[0, 4, 3, 2, 1]]),
            [0]
        );
        assert!(run(&NotAllOne, &[0, 1], &[]).is_empty());
        // alone, the all-others-one clause holds vacuously
        assert!(run(&NotAllOne, &[5], &[&[5]]).is_empty());
        // the fifth-ranked candidate scores zero
        assert_eq!(run(&NotAllOne, &[0, 1, 2, 3, 4], &[&[0, 1, 2, 3, 4]]), [0]);
    }

    #[test]
    fn artificial_examples() {
        assert_eq!(run(&EFirst, &[5, 7], &[&[5, 7]]), [5]);
        assert_eq!(run(&ELast, &[5, 7], &[&[5, 7]]), [7]);
        assert!(run(&EFirst, &[5, 7], &[&[5, 7], &[7, 5]]).is_empty());
        assert!(run(&ELast, &[5, 7], &[]).is_empty());
        assert!(run(&ENull, &[5, 7], &[&[5, 7]]).is_empty());
        assert!(EFirst.winners(&Election::new(ids(&[]), vec![]).unwrap()).is_empty());
    }
}
