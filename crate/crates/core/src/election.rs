//! The election data model: candidates, ballots, elections and winner sets,
//! plus the line-based election text format.
//!
//! Candidates are plain naturals. Ballots are kept as a list, so the position of
//! a ballot in an election is meaningful (several systems look at "the first
//! voter").

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A candidate name, viewed as a natural number.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CandidateId(pub u32);

impl CandidateId {
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for CandidateId {
    type Err = std::num::ParseIntError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse().map(CandidateId)
    }
}

impl From<u32> for CandidateId {
    fn from(v: u32) -> Self {
        CandidateId(v)
    }
}

/// Shorthand for building candidate lists in code and tests.
pub fn ids(values: &[u32]) -> Vec<CandidateId> {
    values.iter().copied().map(CandidateId).collect()
}

/// One voter's strict preference order, most preferred first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ballot(Vec<CandidateId>);

impl Ballot {
    pub fn new(ranking: Vec<CandidateId>) -> Result<Self> {
        let mut seen = ranking.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidBallot(format!("candidate {} ranked twice", w[0])));
        }
        Ok(Ballot(ranking))
    }

    pub fn from_ids(values: &[u32]) -> Result<Self> {
        Ballot::new(ids(values))
    }

    pub(crate) fn new_unchecked(ranking: Vec<CandidateId>) -> Self {
        Ballot(ranking)
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Option<CandidateId> {
        self.0.first().copied()
    }

    pub fn bottom(&self) -> Option<CandidateId> {
        self.0.last().copied()
    }

    /// Zero-based rank of `c`, if it appears on the ballot.
    pub fn position(&self, c: CandidateId) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    /// The ballot restricted to `subset`, keeping the relative order of the
    /// retained candidates. Members of `subset` absent from the ballot are ignored.
    pub fn restrict(&self, subset: &[CandidateId]) -> Ballot {
        Ballot(self.0.iter().copied().filter(|c| subset.contains(c)).collect())
    }

    pub fn map(&self, f: impl Fn(CandidateId) -> CandidateId) -> Ballot {
        Ballot(self.0.iter().map(|&c| f(c)).collect())
    }
}

impl fmt::Display for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`Ballot::restrict`].
pub fn restrict(ballot: &Ballot, subset: &[CandidateId]) -> Ballot {
    ballot.restrict(subset)
}

/// A candidate set together with an ordered list of ballots over exactly that set.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Election {
    candidates: Vec<CandidateId>,
    ballots: Vec<Ballot>,
}

impl Election {
    /// Builds an election, checking that every ballot ranks exactly the candidate set.
    pub fn new(candidates: Vec<CandidateId>, ballots: Vec<Ballot>) -> Result<Self> {
        let mut sorted = candidates;
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvariantViolation(format!("candidate {} listed twice", w[0])));
        }
        for (i, b) in ballots.iter().enumerate() {
            check_permutation(b, &sorted).map_err(|m| Error::InvalidBallot(format!("ballot {}: {m}", i + 1)))?;
        }
        Ok(Election { candidates: sorted, ballots })
    }

    /// Convenience constructor used heavily in tests.
    pub fn from_ids(candidates: &[u32], ballots: &[&[u32]]) -> Result<Self> {
        let ballots = ballots.iter().map(|b| Ballot::from_ids(b)).collect::<Result<Vec<_>>>()?;
        Election::new(ids(candidates), ballots)
    }

    /// `candidates` must be sorted and each ballot a permutation of it.
    pub(crate) fn new_unchecked(candidates: Vec<CandidateId>, ballots: Vec<Ballot>) -> Self {
        debug_assert!(candidates.windows(2).all(|w| w[0] < w[1]));
        Election { candidates, ballots }
    }

    /// Sorted ascending.
    pub fn candidates(&self) -> &[CandidateId] {
        &self.candidates
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_voters(&self) -> usize {
        self.ballots.len()
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.candidates.binary_search(&c).is_ok()
    }

    /// The subelection on `self.candidates ∩ keep`, every ballot restricted.
    pub fn restrict(&self, keep: &[CandidateId]) -> Election {
        let mut out = Election::default();
        self.restrict_into(keep, &mut out);
        out
    }

    /// Allocation-reusing form of [`Election::restrict`].
    pub(crate) fn restrict_into(&self, keep: &[CandidateId], out: &mut Election) {
        let member = |c: &CandidateId| keep.contains(c);
        out.candidates.clear();
        out.candidates.extend(self.candidates.iter().filter(|c| member(c)));
        fill_restricted(&mut out.ballots, self.ballots.iter(), &out.candidates);
    }

    /// Same candidates, a different ballot list (each ballot restricted to the candidates).
    pub(crate) fn with_ballots_into<'b>(
        candidates: &[CandidateId],
        ballots: impl Iterator<Item = &'b Ballot>,
        out: &mut Election,
    ) {
        out.candidates.clear();
        out.candidates.extend_from_slice(candidates);
        fill_restricted(&mut out.ballots, ballots, &out.candidates);
    }

    /// Renames every candidate with `f`, which must be injective on the candidate set.
    pub fn map_candidates(&self, f: impl Fn(CandidateId) -> CandidateId) -> Election {
        let mut candidates: Vec<_> = self.candidates.iter().map(|&c| f(c)).collect();
        candidates.sort_unstable();
        let ballots = self.ballots.iter().map(|b| b.map(&f)).collect();
        Election { candidates, ballots }
    }

    /// Parses the election text format:
    ///
    /// ```text
    /// candidates 1 2 3
    /// ballot 1 > 2 > 3
    /// ballot 2 > 1 > 3
    /// ```
    pub fn parse(text: &str) -> Result<Election> {
        let mut candidates: Option<Vec<CandidateId>> = None;
        let mut ballots = Vec::new();
        for (lineno, line) in content_lines(text) {
            let (key, rest) = split_key(line);
            match key {
                "candidates" if candidates.is_none() => candidates = Some(parse_id_list(rest, lineno)?),
                "candidates" => return Err(parse_err(lineno, "duplicate candidates line")),
                "ballot" if candidates.is_some() => ballots.push(parse_ballot(rest, lineno)?),
                "ballot" => return Err(parse_err(lineno, "ballot before the candidates line")),
                other => return Err(parse_err(lineno, format!("unknown directive {other:?}"))),
            }
        }
        let candidates = candidates.ok_or_else(|| parse_err(0, "missing candidates line"))?;
        Election::new(candidates, ballots)
    }
}

impl fmt::Display for Election {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "candidates{}", join_ids(&self.candidates))?;
        for b in &self.ballots {
            if b.is_empty() {
                writeln!(f, "ballot")?;
            } else {
                writeln!(f, "ballot {b}")?;
            }
        }
        Ok(())
    }
}

fn fill_restricted<'b>(dst: &mut Vec<Ballot>, src: impl Iterator<Item = &'b Ballot>, keep: &[CandidateId]) {
    let mut n = 0;
    for b in src {
        if n == dst.len() {
            dst.push(Ballot(Vec::with_capacity(keep.len())));
        }
        let slot = &mut dst[n].0;
        slot.clear();
        slot.extend(b.0.iter().filter(|c| keep.binary_search(c).is_ok()));
        n += 1;
    }
    dst.truncate(n);
}

fn check_permutation(b: &Ballot, sorted_candidates: &[CandidateId]) -> std::result::Result<(), String> {
    if b.len() != sorted_candidates.len() {
        return Err(format!("ranks {} candidates, expected {}", b.len(), sorted_candidates.len()));
    }
    let mut r = b.0.clone();
    r.sort_unstable();
    if r != sorted_candidates {
        return Err("is not a permutation of the candidate set".into());
    }
    Ok(())
}

/// The (possibly empty, possibly nonstrict) set of winners, sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WinnerSet(Vec<CandidateId>);

impl WinnerSet {
    pub fn empty() -> Self {
        WinnerSet(Vec::new())
    }

    pub fn single(c: CandidateId) -> Self {
        WinnerSet(vec![c])
    }

    pub fn from_vec(mut v: Vec<CandidateId>) -> Self {
        v.sort_unstable();
        v.dedup();
        WinnerSet(v)
    }

    pub fn as_slice(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// True iff the winner set is exactly `{c}`.
    pub fn is_unique(&self, c: CandidateId) -> bool {
        self.0.len() == 1 && self.0[0] == c
    }

    pub fn unique(&self) -> Option<CandidateId> {
        match self.0.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.0.iter().copied()
    }

    pub fn map(&self, f: impl Fn(CandidateId) -> CandidateId) -> WinnerSet {
        WinnerSet::from_vec(self.0.iter().map(|&c| f(c)).collect())
    }
}

impl fmt::Display for WinnerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&brace_ids(&self.0))
    }
}

/// True iff `ws` is exactly `{c}`.
pub fn unique_winner(ws: &WinnerSet, c: CandidateId) -> bool {
    ws.is_unique(c)
}

// ---- shared text-format helpers ----

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn split_key(line: &str) -> (&str, &str) {
    match line.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (line, ""),
    }
}

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub(crate) fn parse_id_list(rest: &str, lineno: usize) -> Result<Vec<CandidateId>> {
    rest.split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(lineno, format!("bad candidate id {t:?}"))))
        .collect()
}

pub(crate) fn parse_usize(rest: &str, lineno: usize) -> Result<usize> {
    rest.trim().parse().map_err(|_| parse_err(lineno, format!("expected a natural number, got {rest:?}")))
}

pub(crate) fn parse_ballot(rest: &str, lineno: usize) -> Result<Ballot> {
    if rest.trim().is_empty() {
        return Ok(Ballot::default());
    }
    let ranking = rest
        .split('>')
        .map(|t| {
            let t = t.trim();
            t.parse().map_err(|_| parse_err(lineno, format!("bad candidate id {t:?} in ballot")))
        })
        .collect::<Result<Vec<CandidateId>>>()?;
    Ballot::new(ranking).map_err(|e| parse_err(lineno, e.to_string()))
}

/// `" 1 2 3"` (leading space per element), used after a directive keyword.
pub(crate) fn join_ids(v: &[CandidateId]) -> String {
    v.iter().map(|c| format!(" {c}")).collect()
}

/// `"{1,2,3}"`.
pub fn brace_ids(v: &[CandidateId]) -> String {
    let inner: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[u32]) -> Ballot {
        Ballot::from_ids(v).unwrap()
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(b(&[3, 1, 2]).restrict(&ids(&[1, 2])), b(&[1, 2]));
        assert_eq!(b(&[3, 1, 2]).restrict(&ids(&[1, 2, 3])), b(&[3, 1, 2]));
        assert_eq!(b(&[3, 1, 2]).restrict(&[]), b(&[]));
    }

    #[test]
    fn unique_winner_examples() {
        let c = CandidateId(5);
        assert!(unique_winner(&WinnerSet::single(c), c));
        assert!(!unique_winner(&WinnerSet::from_vec(ids(&[5, 7])), c));
        assert!(!unique_winner(&WinnerSet::empty(), c));
    }

    #[test]
    fn ballot_rejects_duplicates() {
        assert!(matches!(Ballot::from_ids(&[1, 2, 1]), Err(Error::InvalidBallot(_))));
    }

    #[test]
    fn election_requires_permutations() {
        assert!(Election::from_ids(&[1, 2, 3], &[&[1, 2]]).is_err());
        assert!(Election::from_ids(&[1, 2], &[&[1, 3]]).is_err());
        assert!(Election::from_ids(&[1, 1], &[]).is_err());
        let e = Election::from_ids(&[], &[&[], &[]]).unwrap();
        assert_eq!(e.num_voters(), 2);
        assert_eq!(e.num_candidates(), 0);
    }

    #[test]
    fn restrict_election_keeps_ballot_order() {
        let e = Election::from_ids(&[1, 2, 3], &[&[3, 1, 2], &[2, 3, 1]]).unwrap();
        let r = e.restrict(&ids(&[3, 2, 9]));
        assert_eq!(r.candidates(), ids(&[2, 3]).as_slice());
        assert_eq!(r.ballots(), &[b(&[3, 2]), b(&[2, 3])]);
    }

    #[test]
    fn parse_and_render() {
        let text = "# sample\ncandidates 1 2 3\n\nballot 1 > 2 > 3\nballot 2>3>1  # trailing comment\n";
        let e = Election::parse(text).unwrap();
        assert_eq!(e.num_voters(), 2);
        assert_eq!(e.ballots()[1], b(&[2, 3, 1]));
        assert_eq!(Election::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Election::parse("candidates 1 2\nballot 1 > x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(Election::parse("ballot 1\n").is_err());
        assert!(Election::parse("").is_err());
        assert!(Election::parse("candidates 1 2\nvote 1 > 2\n").is_err());
    }

    #[test]
    fn empty_candidate_line_is_legal() {
        let e = Election::parse("candidates\nballot\n").unwrap();
        assert_eq!(e.num_candidates(), 0);
        assert_eq!(e.num_voters(), 1);
        assert_eq!(Election::parse(&e.to_string()).unwrap(), e);
    }
}
