//! Small artificial systems whose winners depend on the first few ballots and
//! on the sizes of the candidate and voter sets.

use crate::election::{Ballot, CandidateId, Election, WinnerSet};

use super::ElectionSystem;

/// Every n >= 0 with `voters = 1 + n(n-1)/2`. At most two roots (0 and 1 when `voters == 1`).
pub fn triangular_roots(voters: usize) -> Vec<u64> {
    if voters == 0 {
        return Vec::new();
    }
    if voters == 1 {
        return vec![0, 1];
    }
    // n(n-1) = 2(voters-1)
    let target = 2 * (voters as u128 - 1);
    let mut n = ((target as f64).sqrt() as u128).max(1);
    while n * (n - 1) < target {
        n += 1;
    }
    while n > 1 && (n - 1) * (n - 2) >= target {
        n -= 1;
    }
    if n * (n - 1) == target {
        vec![n as u64]
    } else {
        Vec::new()
    }
}

fn in_top_two(b: &Ballot, c: CandidateId) -> bool {
    b.ranking().iter().take(2).any(|&x| x == c)
}

fn second(b: &Ballot) -> Option<CandidateId> {
    b.ranking().get(1).copied()
}

/// Voter 1's top candidate, if it is also in everyone's top two.
fn first_and_top_two_everywhere(e: &Election) -> Option<CandidateId> {
    let c = e.ballots().first()?.top()?;
    e.ballots().iter().all(|b| in_top_two(b, c)).then_some(c)
}

fn from_option(c: Option<CandidateId>) -> WinnerSet {
    c.map_or_else(WinnerSet::empty, WinnerSet::single)
}

/// The sole candidate wins.
#[derive(Clone, Copy, Debug, Default)]
pub struct E0Solo;

impl ElectionSystem for E0Solo {
    fn name(&self) -> &str {
        "e0_solo"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        match e.candidates() {
            [only] => WinnerSet::single(*only),
            _ => WinnerSet::empty(),
        }
    }
}

/// With at least two voters, voter 1's top candidate wins if voter 2 also ranks
/// it first or every voter ranks it in the top two.
#[derive(Clone, Copy, Debug, Default)]
pub struct E1Prefix;

impl ElectionSystem for E1Prefix {
    fn name(&self) -> &str {
        "e1_prefix"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        let v = e.ballots();
        if v.len() < 2 {
            return WinnerSet::empty();
        }
        let Some(c) = v[0].top() else {
            return WinnerSet::empty();
        };
        let wins = v[1].top() == Some(c) || v.iter().all(|b| in_top_two(b, c));
        from_option(wins.then_some(c))
    }
}

/// One candidate and one voter.
#[derive(Clone, Copy, Debug, Default)]
pub struct E0Single;

impl ElectionSystem for E0Single {
    fn name(&self) -> &str {
        "e0_single"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        match (e.candidates(), e.num_voters()) {
            ([only], 1) => WinnerSet::single(*only),
            _ => WinnerSet::empty(),
        }
    }
}

/// For some n with `|V| = 1 + n(n-1)/2` and `2|C| <= n + 3`: voter 1's top
/// candidate wins if every voter ranks it in the top two.
#[derive(Clone, Copy, Debug, Default)]
pub struct E1Tri;

impl ElectionSystem for E1Tri {
    fn name(&self) -> &str {
        "e1_tri"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        let m = e.num_candidates() as u64;
        let sized = triangular_roots(e.num_voters()).into_iter().any(|n| 2 * m <= n + 3);
        if !sized {
            return WinnerSet::empty();
        }
        from_option(first_and_top_two_everywhere(e))
    }
}

/// For some even n with `|V| = 1 + n(n-1)/2` and `|C|` in `{1, n/2 + 2}`: voter 1's
/// top candidate wins if every voter ranks it in the top two.
#[derive(Clone, Copy, Debug, Default)]
pub struct E1TriEven;

impl ElectionSystem for E1TriEven {
    fn name(&self) -> &str {
        "e1_tri_even"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        let m = e.num_candidates() as u64;
        let sized = triangular_roots(e.num_voters())
            .into_iter()
            .any(|n| n % 2 == 0 && (m == 1 || m == n / 2 + 2));
        if !sized {
            return WinnerSet::empty();
        }
        from_option(first_and_top_two_everywhere(e))
    }
}

/// Voter 1's top candidate wins if there are at least two voters or at least two candidates.
#[derive(Clone, Copy, Debug, Default)]
pub struct E0DFirst;

impl ElectionSystem for E0DFirst {
    fn name(&self) -> &str {
        "e0_dfirst"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        let Some(c) = e.ballots().first().and_then(Ballot::top) else {
            return WinnerSet::empty();
        };
        from_option((e.num_voters() >= 2 || e.num_candidates() >= 2).then_some(c))
    }
}

/// Voter 1's second choice wins unless `|V| = 4|C|^2` and nobody ranks it below second.
#[derive(Clone, Copy, Debug, Default)]
pub struct E1Second;

impl ElectionSystem for E1Second {
    fn name(&self) -> &str {
        "e1_second"
    }

    fn tie_free(&self) -> bool {
        true
    }

    fn winners(&self, e: &Election) -> WinnerSet {
        let Some(c) = e.ballots().first().and_then(second) else {
            return WinnerSet::empty();
        };
        let m = e.num_candidates();
        let worse_somewhere = e.ballots().iter().any(|b| !in_top_two(b, c));
        from_option((e.num_voters() != 4 * m * m || worse_somewhere).then_some(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &dyn ElectionSystem, c: &[u32], v: &[&[u32]]) -> Vec<u32> {
        let e = Election::from_ids(c, v).unwrap();
        s.winners(&e).iter().map(|c| c.0).collect()
    }

    const NONE: [u32; 0] = [];

    #[test]
    fn triangular_roots_by_enumeration() {
        for v in 0..2000usize {
            let expected: Vec<u64> =
                (0..100u64).filter(|&n| 1 + n * n.saturating_sub(1) / 2 == v as u64).collect();
            assert_eq!(triangular_roots(v), expected, "v = {v}");
        }
    }

    #[test]
    fn solo_and_single() {
        assert_eq!(run(&E0Solo, &[9], &[&[9]]), [9]);
        assert_eq!(run(&E0Solo, &[8, 9], &[&[8, 9]]), NONE);
        assert_eq!(run(&E0Solo, &[9], &[]), [9]);
        assert_eq!(run(&E0Single, &[9], &[&[9]]), [9]);
        assert_eq!(run(&E0Single, &[9], &[&[9], &[9]]), NONE);
        assert_eq!(run(&E0Single, &[9], &[]), NONE);
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(run(&E1Prefix, &[0, 1, 2], &[&[1, 0, 2], &[0, 2, 1]]), NONE);
        assert_eq!(run(&E1Prefix, &[0, 1, 2], &[&[1, 0, 2], &[1, 2, 0]]), [1]);
        assert_eq!(run(&E1Prefix, &[0, 1, 2], &[&[1, 0, 2], &[0, 1, 2], &[2, 1, 0]]), [1]);
        assert_eq!(run(&E1Prefix, &[0, 1], &[&[1, 0]]), NONE);
    }

    #[test]
    fn tri_examples() {
        assert_eq!(run(&E1Tri, &[4, 6], &[&[4, 6]]), [4]);
        // |V| = 2 has root n = 2, allowing |C| <= 2
        assert_eq!(run(&E1Tri, &[4, 6], &[&[4, 6], &[6, 4]]), [4]);
        assert_eq!(run(&E1Tri, &[4, 6, 8], &[&[4, 6, 8], &[6, 4, 8]]), NONE);
        // |V| = 3 has no root
        assert_eq!(run(&E1Tri, &[4], &[&[4], &[4], &[4]]), NONE);
        assert_eq!(run(&E1Tri, &[4, 6, 8], &[&[4, 6, 8], &[6, 8, 4], &[4, 6, 8], &[4, 6, 8]]), NONE);
    }

    #[test]
    fn tri_even_examples() {
        // |V| = 1: n = 0 gives |C| in {1, 2}
        assert_eq!(run(&E1TriEven, &[4, 6], &[&[4, 6]]), [4]);
        assert_eq!(run(&E1TriEven, &[4, 6, 8], &[&[4, 6, 8]]), NONE);
        // |V| = 2: n = 2 gives |C| in {1, 3}
        assert_eq!(run(&E1TriEven, &[4, 6], &[&[4, 6], &[4, 6]]), NONE);
        assert_eq!(run(&E1TriEven, &[4, 6, 8], &[&[4, 6, 8], &[6, 4, 8]]), [4]);
        assert_eq!(run(&E1TriEven, &[4], &[&[4], &[4]]), [4]);
    }

    #[test]
    fn dfirst_examples() {
        assert_eq!(run(&E0DFirst, &[3], &[&[3]]), NONE);
        assert_eq!(run(&E0DFirst, &[3], &[&[3], &[3]]), [3]);
        assert_eq!(run(&E0DFirst, &[3, 5], &[&[5, 3]]), [5]);
        assert_eq!(run(&E0DFirst, &[3, 5], &[]), NONE);
    }

    #[test]
    fn second_examples() {
        assert_eq!(run(&E1Second, &[2, 4], &[&[4, 2]]), [2]);
        assert_eq!(run(&E1Second, &[2], &[&[2]]), NONE);
        // |V| = 4 * 1^2 with one candidate: no second place at all
        let sixteen: Vec<&[u32]> = vec![&[4, 2]; 16];
        assert_eq!(run(&E1Second, &[2, 4], &sixteen), NONE);
        let mut mixed = sixteen.clone();
        mixed[3] = &[2, 4];
        assert_eq!(run(&E1Second, &[2, 4], &mixed), NONE);
        let three: Vec<&[u32]> = vec![&[4, 2, 6]; 36];
        let mut worse = three.clone();
        worse[5] = &[4, 6, 2];
        assert_eq!(run(&E1Second, &[2, 4, 6], &three), NONE);
        assert_eq!(run(&E1Second, &[2, 4, 6], &worse), [2]);
    }
}
