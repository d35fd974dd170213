//! The twenty control problems: instances, chair actions, and outcome evaluation.
//!
//! An instance fixes a system, a distinguished candidate `c`, a goal, and one of
//! seven control types. Partition types additionally carry a tie model that
//! decides which subelection winners move on to the final round.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::election::{
    brace_ids, content_lines, join_ids, parse_ballot, parse_err, parse_id_list, parse_usize, split_key, Ballot,
    CandidateId, Election, WinnerSet,
};
use crate::error::{Error, Result};
use crate::systems::{ElectionSystem, SystemId, SystemRegistry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Goal {
    /// Make `c` the unique winner.
    Constructive,
    /// Make `c` not the unique winner.
    Destructive,
}

impl Goal {
    pub fn met(self, winners: &WinnerSet, c: CandidateId) -> bool {
        match self {
            Goal::Constructive => winners.is_unique(c),
            Goal::Destructive => !winners.is_unique(c),
        }
    }

    fn code(self) -> &'static str {
        match self {
            Goal::Constructive => "CC",
            Goal::Destructive => "DC",
        }
    }
}

/// Which subelection winners move on to the next round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TieModel {
    /// Only a unique winner moves on.
    TiesEliminate,
    /// Every winner moves on.
    TiesPromote,
}

impl TieModel {
    pub const BOTH: [TieModel; 2] = [TieModel::TiesEliminate, TieModel::TiesPromote];

    pub fn survivors(self, winners: &WinnerSet) -> &[CandidateId] {
        match self {
            TieModel::TiesEliminate if winners.len() != 1 => &[],
            _ => winners.as_slice(),
        }
    }
}

impl fmt::Display for TieModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieModel::TiesEliminate => "TE",
            TieModel::TiesPromote => "TP",
        })
    }
}

impl FromStr for TieModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "TE" => Ok(TieModel::TiesEliminate),
            "TP" => Ok(TieModel::TiesPromote),
            other => Err(Error::InvariantViolation(format!("unknown tie model {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ControlType {
    AddCandidates,
    DeleteCandidates,
    PartitionCandidates(TieModel),
    RunoffPartitionCandidates(TieModel),
    AddVoters,
    DeleteVoters,
    PartitionVoters(TieModel),
}

impl ControlType {
    /// The ten control types, partition types once per tie model.
    pub fn all() -> Vec<ControlType> {
        use ControlType::*;
        let mut v = vec![AddCandidates, DeleteCandidates];
        for t in TieModel::BOTH {
            v.push(PartitionCandidates(t));
        }
        for t in TieModel::BOTH {
            v.push(RunoffPartitionCandidates(t));
        }
        v.extend([AddVoters, DeleteVoters]);
        for t in TieModel::BOTH {
            v.push(PartitionVoters(t));
        }
        v
    }

    pub fn tie(self) -> Option<TieModel> {
        match self {
            ControlType::PartitionCandidates(t)
            | ControlType::RunoffPartitionCandidates(t)
            | ControlType::PartitionVoters(t) => Some(t),
            _ => None,
        }
    }

    pub fn has_limit(self) -> bool {
        matches!(self, ControlType::DeleteCandidates | ControlType::AddVoters | ControlType::DeleteVoters)
    }

    pub fn is_voter_control(self) -> bool {
        matches!(self, ControlType::AddVoters | ControlType::DeleteVoters | ControlType::PartitionVoters(_))
    }

    fn base_code(self) -> &'static str {
        match self {
            ControlType::AddCandidates => "AC",
            ControlType::DeleteCandidates => "DC",
            ControlType::PartitionCandidates(_) => "PC",
            ControlType::RunoffPartitionCandidates(_) => "RPC",
            ControlType::AddVoters => "AV",
            ControlType::DeleteVoters => "DV",
            ControlType::PartitionVoters(_) => "PV",
        }
    }
}

/// A goal together with a control type, written like `CCAC` or `DCPV-TP`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ControlProblem {
    pub goal: Goal,
    pub kind: ControlType,
}

impl ControlProblem {
    pub fn new(goal: Goal, kind: ControlType) -> Self {
        ControlProblem { goal, kind }
    }

    /// All twenty problems.
    pub fn all() -> Vec<ControlProblem> {
        [Goal::Constructive, Goal::Destructive]
            .into_iter()
            .flat_map(|g| ControlType::all().into_iter().map(move |k| ControlProblem::new(g, k)))
            .collect()
    }

    /// Parses a code whose tie suffix may be missing; partition types then get `None` for the tie.
    pub fn parse_loose(s: &str) -> Result<(Goal, &'static str, Option<TieModel>)> {
        let bad = || Error::InvariantViolation(format!("unknown control type {s:?}"));
        let s = s.trim();
        let (head, tie) = match s.split_once('-') {
            Some((h, t)) => (h, Some(t.parse::<TieModel>()?)),
            None => (s, None),
        };
        let goal = match head.get(..2) {
            Some("CC") => Goal::Constructive,
            Some("DC") => Goal::Destructive,
            _ => return Err(bad()),
        };
        let base = match &head[2..] {
            "AC" => "AC",
            "DC" => "DC",
            "PC" => "PC",
            "RPC" => "RPC",
            "AV" => "AV",
            "DV" => "DV",
            "PV" => "PV",
            _ => return Err(bad()),
        };
        if tie.is_some() && !matches!(base, "PC" | "RPC" | "PV") {
            return Err(bad());
        }
        Ok((goal, base, tie))
    }

    fn assemble(goal: Goal, base: &str, tie: Option<TieModel>) -> Result<ControlProblem> {
        let need_tie =
            || tie.ok_or_else(|| Error::InvariantViolation(format!("{base} needs a tie model (TE or TP)")));
        let kind = match base {
            "AC" => ControlType::AddCandidates,
            "DC" => ControlType::DeleteCandidates,
            "PC" => ControlType::PartitionCandidates(need_tie()?),
            "RPC" => ControlType::RunoffPartitionCandidates(need_tie()?),
            "AV" => ControlType::AddVoters,
            "DV" => ControlType::DeleteVoters,
            "PV" => ControlType::PartitionVoters(need_tie()?),
            _ => unreachable!(),
        };
        Ok(ControlProblem::new(goal, kind))
    }
}

impl fmt::Display for ControlProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.goal.code(), self.kind.base_code())?;
        if let Some(t) = self.kind.tie() {
            write!(f, "-{t}")?;
        }
        Ok(())
    }
}

impl FromStr for ControlProblem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (goal, base, tie) = ControlProblem::parse_loose(s)?;
        ControlProblem::assemble(goal, base, tie)
    }
}

/// Type-specific data of a control instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    /// The election ranks qualified and spoiler candidates together.
    AddCandidates { spoilers: Vec<CandidateId> },
    DeleteCandidates { limit: usize },
    PartitionCandidates { tie: TieModel },
    RunoffPartitionCandidates { tie: TieModel },
    /// The election holds the registered ballots.
    AddVoters { unregistered: Vec<Ballot>, limit: usize },
    DeleteVoters { limit: usize },
    PartitionVoters { tie: TieModel },
}

/// One control problem instance. Build with the per-type constructors, which check invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ControlInstance {
    system: SystemId,
    goal: Goal,
    distinguished: CandidateId,
    election: Election,
    kind: InstanceKind,
}

impl ControlInstance {
    pub fn new(
        system: SystemId,
        goal: Goal,
        distinguished: CandidateId,
        election: Election,
        kind: InstanceKind,
    ) -> Result<Self> {
        let inst = ControlInstance { system, goal, distinguished, election, kind };
        inst.validate()?;
        Ok(inst)
    }

    pub fn add_candidates(
        system: SystemId,
        goal: Goal,
        c: CandidateId,
        election: Election,
        spoilers: Vec<CandidateId>,
    ) -> Result<Self> {
        let mut spoilers = spoilers;
        spoilers.sort_unstable();
        Self::new(system, goal, c, election, InstanceKind::AddCandidates { spoilers })
    }

    pub fn delete_candidates(system: SystemId, goal: Goal, c: CandidateId, election: Election, limit: usize) -> Result<Self> {
        Self::new(system, goal, c, election, InstanceKind::DeleteCandidates { limit })
    }

    pub fn partition_candidates(system: SystemId, goal: Goal, c: CandidateId, election: Election, tie: TieModel) -> Result<Self> {
        Self::new(system, goal, c, election, InstanceKind::PartitionCandidates { tie })
    }

    pub fn runoff_partition_candidates(
        system: SystemId,
        goal: Goal,
        c: CandidateId,
        election: Election,
        tie: TieModel,
    ) -> Result<Self> {
        Self::new(system, goal, c, election, InstanceKind::RunoffPartitionCandidates { tie })
    }

    pub fn add_voters(
        system: SystemId,
        goal: Goal,
        c: CandidateId,
        registered: Election,
        unregistered: Vec<Ballot>,
        limit: usize,
    ) -> Result<Self> {
        Self::new(system, goal, c, registered, InstanceKind::AddVoters { unregistered, limit })
    }

    pub fn delete_voters(system: SystemId, goal: Goal, c: CandidateId, election: Election, limit: usize) -> Result<Self> {
        Self::new(system, goal, c, election, InstanceKind::DeleteVoters { limit })
    }

    pub fn partition_voters(system: SystemId, goal: Goal, c: CandidateId, election: Election, tie: TieModel) -> Result<Self> {
        Self::new(system, goal, c, election, InstanceKind::PartitionVoters { tie })
    }

    /// Builds an instance of `problem` from the parts every type shares, plus
    /// the type-specific extras (ignored where irrelevant).
    pub fn for_problem(
        problem: ControlProblem,
        system: SystemId,
        c: CandidateId,
        election: Election,
        limit: usize,
        spoilers: Vec<CandidateId>,
        unregistered: Vec<Ballot>,
    ) -> Result<Self> {
        let kind = match problem.kind {
            ControlType::AddCandidates => {
                let mut spoilers = spoilers;
                spoilers.sort_unstable();
                InstanceKind::AddCandidates { spoilers }
            }
            ControlType::DeleteCandidates => InstanceKind::DeleteCandidates { limit },
            ControlType::PartitionCandidates(tie) => InstanceKind::PartitionCandidates { tie },
            ControlType::RunoffPartitionCandidates(tie) => InstanceKind::RunoffPartitionCandidates { tie },
            ControlType::AddVoters => InstanceKind::AddVoters { unregistered, limit },
            ControlType::DeleteVoters => InstanceKind::DeleteVoters { limit },
            ControlType::PartitionVoters(tie) => InstanceKind::PartitionVoters { tie },
        };
        Self::new(system, problem.goal, c, election, kind)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvariantViolation(m));
        let c = self.distinguished;
        if !self.election.contains(c) {
            return bad(format!("distinguished candidate {c} is not a candidate"));
        }
        match &self.kind {
            InstanceKind::AddCandidates { spoilers } => {
                if spoilers.windows(2).any(|w| w[0] == w[1]) {
                    return bad("spoiler listed twice".into());
                }
                if let Some(d) = spoilers.iter().find(|d| !self.election.contains(**d)) {
                    return bad(format!("spoiler {d} is not ranked by the ballots"));
                }
                if spoilers.contains(&c) {
                    return bad(format!("distinguished candidate {c} is a spoiler"));
                }
            }
            InstanceKind::AddVoters { unregistered, limit } => {
                for (i, b) in unregistered.iter().enumerate() {
                    let mut r = b.ranking().to_vec();
                    r.sort_unstable();
                    if r != self.election.candidates() {
                        return Err(Error::InvalidBallot(format!(
                            "unregistered ballot {} is not a permutation of the candidates",
                            i + 1
                        )));
                    }
                }
                if *limit > unregistered.len() {
                    return bad(format!("limit {limit} exceeds the {} unregistered ballots", unregistered.len()));
                }
            }
            InstanceKind::DeleteVoters { limit } if *limit > self.election.num_voters() => {
                return bad(format!("limit {limit} exceeds the {} ballots", self.election.num_voters()));
            }
            _ => {}
        }
        Ok(())
    }

    pub fn system(&self) -> &SystemId {
        &self.system
    }

    pub fn goal(&self) -> Goal {
        self.goal
    }

    pub fn distinguished(&self) -> CandidateId {
        self.distinguished
    }

    /// For adding candidates this ranks qualified and spoiler candidates; for adding voters it
    /// holds only the registered ballots.
    pub fn election(&self) -> &Election {
        &self.election
    }

    pub fn kind(&self) -> &InstanceKind {
        &self.kind
    }

    pub fn control_type(&self) -> ControlType {
        match &self.kind {
            InstanceKind::AddCandidates { .. } => ControlType::AddCandidates,
            InstanceKind::DeleteCandidates { .. } => ControlType::DeleteCandidates,
            InstanceKind::PartitionCandidates { tie } => ControlType::PartitionCandidates(*tie),
            InstanceKind::RunoffPartitionCandidates { tie } => ControlType::RunoffPartitionCandidates(*tie),
            InstanceKind::AddVoters { .. } => ControlType::AddVoters,
            InstanceKind::DeleteVoters { .. } => ControlType::DeleteVoters,
            InstanceKind::PartitionVoters { tie } => ControlType::PartitionVoters(*tie),
        }
    }

    pub fn problem(&self) -> ControlProblem {
        ControlProblem::new(self.goal, self.control_type())
    }

    /// The candidate set `C` before any action (qualified candidates for adding candidates).
    pub fn base_candidates(&self) -> Vec<CandidateId> {
        match &self.kind {
            InstanceKind::AddCandidates { spoilers } => {
                self.election.candidates().iter().copied().filter(|c| spoilers.binary_search(c).is_err()).collect()
            }
            _ => self.election.candidates().to_vec(),
        }
    }

    pub fn spoilers(&self) -> &[CandidateId] {
        match &self.kind {
            InstanceKind::AddCandidates { spoilers } => spoilers,
            _ => &[],
        }
    }

    pub fn unregistered(&self) -> &[Ballot] {
        match &self.kind {
            InstanceKind::AddVoters { unregistered, .. } => unregistered,
            _ => &[],
        }
    }

    pub fn limit(&self) -> Option<usize> {
        match &self.kind {
            InstanceKind::DeleteCandidates { limit }
            | InstanceKind::AddVoters { limit, .. }
            | InstanceKind::DeleteVoters { limit } => Some(*limit),
            _ => None,
        }
    }

    /// The same instance with a different limit. Fails for types without one.
    pub fn with_limit(&self, limit: usize) -> Result<Self> {
        let mut out = self.clone();
        match &mut out.kind {
            InstanceKind::DeleteCandidates { limit: l }
            | InstanceKind::AddVoters { limit: l, .. }
            | InstanceKind::DeleteVoters { limit: l } => *l = limit,
            _ => return Err(Error::ShapeMismatch(format!("{} has no limit", self.problem()))),
        }
        out.validate()?;
        Ok(out)
    }

    pub fn with_goal(&self, goal: Goal) -> Self {
        ControlInstance { goal, ..self.clone() }
    }

    pub fn with_system(&self, system: SystemId) -> Self {
        ControlInstance { system, ..self.clone() }
    }

    /// Renames every candidate (in the election, spoilers, unregistered ballots and `c`).
    pub fn map_candidates(&self, f: impl Fn(CandidateId) -> CandidateId) -> Result<Self> {
        let election = self.election.map_candidates(&f);
        let kind = match &self.kind {
            InstanceKind::AddCandidates { spoilers } => {
                let mut spoilers: Vec<_> = spoilers.iter().map(|&d| f(d)).collect();
                spoilers.sort_unstable();
                InstanceKind::AddCandidates { spoilers }
            }
            InstanceKind::AddVoters { unregistered, limit } => InstanceKind::AddVoters {
                unregistered: unregistered.iter().map(|b| b.map(&f)).collect(),
                limit: *limit,
            },
            other => other.clone(),
        };
        Self::new(self.system.clone(), self.goal, f(self.distinguished), election, kind)
    }

    /// Final winner set after `action`.
    pub fn outcome(&self, registry: &SystemRegistry, action: &ControlAction) -> Result<WinnerSet> {
        Evaluator::new(self, registry)?.outcome(action)
    }

    /// Whether `action` achieves the instance's goal for `c`.
    pub fn goal_met(&self, registry: &SystemRegistry, action: &ControlAction) -> Result<bool> {
        Evaluator::new(self, registry)?.goal_met(action)
    }

    /// Parses the control-instance text format.
    ///
    /// ```text
    /// type CCAC
    /// system hybrid:e_first,e_last
    /// distinguished 0
    /// candidates 0 2
    /// spoilers 1
    /// ballot 2 > 1 > 0
    /// ```
    ///
    /// Partition types take the tie model either as a `-TE`/`-TP` suffix or on a
    /// `tie` line; without either, ties eliminate. `k` is required exactly for
    /// deleting candidates and adding or deleting voters. For adding candidates,
    /// `candidates` lists the qualified candidates and ballots rank them together
    /// with the spoilers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ty: Option<(Goal, &'static str, Option<TieModel>, usize)> = None;
        let mut system = None;
        let mut distinguished = None;
        let mut k = None;
        let mut tie_line = None;
        let mut candidates = None;
        let mut spoilers = None;
        let mut ballots = Vec::new();
        let mut unregistered = Vec::new();
        let once = |slot_full: bool, lineno: usize, key: &str| {
            if slot_full {
                Err(parse_err(lineno, format!("duplicate {key} line")))
            } else {
                Ok(())
            }
        };
        for (lineno, line) in content_lines(text) {
            let (key, rest) = split_key(line);
            match key {
                "type" => {
                    once(ty.is_some(), lineno, key)?;
                    let (g, base, tie) =
                        ControlProblem::parse_loose(rest).map_err(|e| parse_err(lineno, e.to_string()))?;
                    ty = Some((g, base, tie, lineno));
                }
                "system" => {
                    once(system.is_some(), lineno, key)?;
                    system = Some(rest.parse::<SystemId>().map_err(|e| parse_err(lineno, e.to_string()))?);
                }
                "distinguished" => {
                    once(distinguished.is_some(), lineno, key)?;
                    let ids = parse_id_list(rest, lineno)?;
                    match ids.as_slice() {
                        [c] => distinguished = Some(*c),
                        _ => return Err(parse_err(lineno, "expected one candidate id")),
                    }
                }
                "k" => {
                    once(k.is_some(), lineno, key)?;
                    k = Some((parse_usize(rest, lineno)?, lineno));
                }
                "tie" => {
                    once(tie_line.is_some(), lineno, key)?;
                    tie_line = Some((rest.parse::<TieModel>().map_err(|e| parse_err(lineno, e.to_string()))?, lineno));
                }
                "candidates" => {
                    once(candidates.is_some(), lineno, key)?;
                    candidates = Some(parse_id_list(rest, lineno)?);
                }
                "spoilers" => {
                    once(spoilers.is_some(), lineno, key)?;
                    spoilers = Some((parse_id_list(rest, lineno)?, lineno));
                }
                "ballot" => ballots.push(parse_ballot(rest, lineno)?),
                "unregistered-ballot" => unregistered.push((parse_ballot(rest, lineno)?, lineno)),
                other => return Err(parse_err(lineno, format!("unknown directive {other:?}"))),
            }
        }
        let (goal, base, suffix_tie, ty_line) = ty.ok_or_else(|| parse_err(0, "missing type line"))?;
        let system = system.ok_or_else(|| parse_err(0, "missing system line"))?;
        let c = distinguished.ok_or_else(|| parse_err(0, "missing distinguished line"))?;
        let mut cands = candidates.ok_or_else(|| parse_err(0, "missing candidates line"))?;
        let is_partition = matches!(base, "PC" | "RPC" | "PV");
        let tie = match (suffix_tie, tie_line) {
            (Some(a), Some((b, line))) if a != b => return Err(parse_err(line, "tie line contradicts the type suffix")),
            (Some(t), _) | (None, Some((t, _))) => Some(t),
            (None, None) if is_partition => Some(TieModel::TiesEliminate),
            (None, None) => None,
        };
        if let (false, Some((_, line))) = (is_partition, tie_line) {
            return Err(parse_err(line, format!("{base} takes no tie model")));
        }
        let problem = ControlProblem::assemble(goal, base, tie).map_err(|e| parse_err(ty_line, e.to_string()))?;
        let needs_k = problem.kind.has_limit();
        let limit = match k {
            Some((v, _)) if needs_k => v,
            Some((_, line)) => return Err(parse_err(line, format!("{base} takes no limit"))),
            None if needs_k => return Err(parse_err(ty_line, format!("{base} needs a k line"))),
            None => 0,
        };
        let spoiler_ids = match spoilers {
            Some((s, _)) if base == "AC" => s,
            Some((_, line)) => return Err(parse_err(line, "spoilers are only meaningful for adding candidates")),
            None => Vec::new(),
        };
        if base != "AV" {
            if let Some((_, line)) = unregistered.first() {
                return Err(parse_err(*line, "unregistered ballots are only meaningful for adding voters"));
            }
        }
        cands.extend(spoiler_ids.iter().copied());
        let election = Election::new(cands, ballots)?;
        ControlInstance::for_problem(
            problem,
            system,
            c,
            election,
            limit,
            spoiler_ids,
            unregistered.into_iter().map(|(b, _)| b).collect(),
        )
    }
}

impl fmt::Display for ControlInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type {}", self.problem())?;
        writeln!(f, "system {}", self.system)?;
        writeln!(f, "distinguished {}", self.distinguished)?;
        if let Some(k) = self.limit() {
            writeln!(f, "k {k}")?;
        }
        writeln!(f, "candidates{}", join_ids(&self.base_candidates()))?;
        if let InstanceKind::AddCandidates { spoilers } = &self.kind {
            writeln!(f, "spoilers{}", join_ids(spoilers))?;
        }
        let line = |f: &mut fmt::Formatter<'_>, key: &str, b: &Ballot| {
            if b.is_empty() {
                writeln!(f, "{key}")
            } else {
                writeln!(f, "{key} {b}")
            }
        };
        for b in self.election.ballots() {
            line(f, "ballot", b)?;
        }
        for b in self.unregistered() {
            line(f, "unregistered-ballot", b)?;
        }
        Ok(())
    }
}

/// A chair move. Voter indices are zero-based positions in the registered (or
/// unregistered, for adding voters) ballot list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ControlAction {
    AddCandidates(Vec<CandidateId>),
    DeleteCandidates(Vec<CandidateId>),
    PartitionCandidates { first: Vec<CandidateId>, second: Vec<CandidateId> },
    PartitionVoters { in_first: Vec<bool> },
    AddVoters(Vec<usize>),
    DeleteVoters(Vec<usize>),
}

impl ControlAction {
    /// Renames candidates; voter indices are unaffected.
    pub fn map_candidates(&self, f: impl Fn(CandidateId) -> CandidateId) -> Self {
        let m = |v: &[CandidateId]| {
            let mut out: Vec<_> = v.iter().map(|&c| f(c)).collect();
            out.sort_unstable();
            out
        };
        match self {
            ControlAction::AddCandidates(v) => ControlAction::AddCandidates(m(v)),
            ControlAction::DeleteCandidates(v) => ControlAction::DeleteCandidates(m(v)),
            ControlAction::PartitionCandidates { first, second } => {
                ControlAction::PartitionCandidates { first: m(first), second: m(second) }
            }
            other => other.clone(),
        }
    }
}

fn brace_usize(v: &[usize]) -> String {
    let inner: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for ControlAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ControlAction::AddCandidates(v) => write!(f, "add {}", brace_ids(v)),
            ControlAction::DeleteCandidates(v) => write!(f, "delete {}", brace_ids(v)),
            ControlAction::PartitionCandidates { first, second } => {
                write!(f, "partition {} | {}", brace_ids(first), brace_ids(second))
            }
            ControlAction::PartitionVoters { in_first } => {
                let side = |want: bool| -> Vec<usize> {
                    in_first.iter().enumerate().filter(|(_, &s)| s == want).map(|(i, _)| i).collect()
                };
                write!(f, "partition-voters {} | {}", brace_usize(&side(true)), brace_usize(&side(false)))
            }
            ControlAction::AddVoters(v) => write!(f, "add-voters {}", brace_usize(v)),
            ControlAction::DeleteVoters(v) => write!(f, "delete-voters {}", brace_usize(v)),
        }
    }
}

fn sorted_distinct<T: Ord + Copy + fmt::Display>(v: &[T], what: &str) -> Result<Vec<T>> {
    let mut s = v.to_vec();
    s.sort_unstable();
    if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::ShapeMismatch(format!("{what} {} listed twice", w[0])));
    }
    Ok(s)
}

fn union_sorted(a: &[CandidateId], b: &[CandidateId], out: &mut Vec<CandidateId>) {
    out.clear();
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out.dedup();
}

/// Outcome evaluation with reusable scratch buffers. Actions passed to the
/// `*_unchecked` methods must already satisfy the instance's bounds.
pub struct Evaluator<'a> {
    instance: &'a ControlInstance,
    system: Arc<dyn ElectionSystem>,
    base: Vec<CandidateId>,
    sub: Election,
    keep: Vec<CandidateId>,
    keep2: Vec<CandidateId>,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a ControlInstance, registry: &SystemRegistry) -> Result<Self> {
        Ok(Self::with_system(instance, registry.resolve(&instance.system)?))
    }

    pub fn with_system(instance: &'a ControlInstance, system: Arc<dyn ElectionSystem>) -> Self {
        Evaluator {
            instance,
            system,
            base: instance.base_candidates(),
            sub: Election::default(),
            keep: Vec::new(),
            keep2: Vec::new(),
        }
    }

    pub fn instance(&self) -> &ControlInstance {
        self.instance
    }

    pub fn system(&self) -> &Arc<dyn ElectionSystem> {
        &self.system
    }

    /// `C` before any action.
    pub fn base_candidates(&self) -> &[CandidateId] {
        &self.base
    }

    pub fn met(&self, winners: &WinnerSet) -> bool {
        self.instance.goal.met(winners, self.instance.distinguished)
    }

    /// Winners of the full election restricted to `keep` (sorted).
    pub fn winners_on(&mut self, keep: &[CandidateId]) -> WinnerSet {
        self.instance.election.restrict_into(keep, &mut self.sub);
        self.system.winners(&self.sub)
    }

    /// Adding spoilers `added` (sorted) to `C`.
    pub fn add_candidates_unchecked(&mut self, added: &[CandidateId]) -> WinnerSet {
        let mut keep = std::mem::take(&mut self.keep);
        union_sorted(&self.base, added, &mut keep);
        let w = self.winners_on(&keep);
        self.keep = keep;
        w
    }

    /// Deleting `removed` (sorted) from `C`.
    pub fn delete_candidates_unchecked(&mut self, removed: &[CandidateId]) -> WinnerSet {
        let mut keep = std::mem::take(&mut self.keep);
        keep.clear();
        keep.extend(self.base.iter().filter(|c| removed.binary_search(c).is_err()));
        let w = self.winners_on(&keep);
        self.keep = keep;
        w
    }

    /// Partition `(first, second)` of `C`, both sorted. With `runoff`, both sides hold a
    /// subelection; otherwise only `first` does and `second` goes straight to the final.
    pub fn partition_candidates_unchecked(
        &mut self,
        first: &[CandidateId],
        second: &[CandidateId],
        runoff: bool,
        tie: TieModel,
    ) -> WinnerSet {
        let w1 = self.winners_on(first);
        let s1 = tie.survivors(&w1);
        let mut keep = std::mem::take(&mut self.keep2);
        if runoff {
            let w2 = self.winners_on(second);
            union_sorted(s1, tie.survivors(&w2), &mut keep);
        } else {
            union_sorted(s1, second, &mut keep);
        }
        let w = self.winners_on(&keep);
        self.keep2 = keep;
        w
    }

    /// Registered ballots followed by the unregistered ballots at `added` (ascending).
    pub fn add_voters_unchecked(&mut self, added: &[usize]) -> WinnerSet {
        let inst = self.instance;
        let w = inst.unregistered();
        let ballots = inst.election.ballots().iter().chain(added.iter().map(|&i| &w[i]));
        Election::with_ballots_into(&self.base, ballots, &mut self.sub);
        self.system.winners(&self.sub)
    }

    /// Registered ballots without those at `removed` (ascending).
    pub fn delete_voters_unchecked(&mut self, removed: &[usize]) -> WinnerSet {
        let inst = self.instance;
        let ballots =
            inst.election.ballots().iter().enumerate().filter(|(i, _)| removed.binary_search(i).is_err()).map(|(_, b)| b);
        Election::with_ballots_into(&self.base, ballots, &mut self.sub);
        self.system.winners(&self.sub)
    }

    fn side_winners(&mut self, in_first: &[bool], want: bool) -> WinnerSet {
        let inst = self.instance;
        let ballots = inst.election.ballots().iter().zip(in_first).filter(|(_, &s)| s == want).map(|(b, _)| b);
        Election::with_ballots_into(&self.base, ballots, &mut self.sub);
        self.system.winners(&self.sub)
    }

    /// Ballot i votes in the first subelection iff `in_first[i]`.
    pub fn partition_voters_unchecked(&mut self, in_first: &[bool], tie: TieModel) -> WinnerSet {
        let w1 = self.side_winners(in_first, true);
        let w2 = self.side_winners(in_first, false);
        let mut keep = std::mem::take(&mut self.keep2);
        union_sorted(tie.survivors(&w1), tie.survivors(&w2), &mut keep);
        let w = self.winners_on(&keep);
        self.keep2 = keep;
        w
    }

    /// Checks `action` against the instance and evaluates it.
    pub fn outcome(&mut self, action: &ControlAction) -> Result<WinnerSet> {
        let inst = self.instance;
        let mismatch = || Error::ShapeMismatch(format!("{action} does not apply to {}", inst.problem()));
        match (&inst.kind, action) {
            (InstanceKind::AddCandidates { spoilers }, ControlAction::AddCandidates(a)) => {
                let a = sorted_distinct(a, "candidate")?;
                if let Some(d) = a.iter().find(|d| spoilers.binary_search(d).is_err()) {
                    return Err(Error::ShapeMismatch(format!("{d} is not a spoiler")));
                }
                Ok(self.add_candidates_unchecked(&a))
            }
            (InstanceKind::DeleteCandidates { limit }, ControlAction::DeleteCandidates(x)) => {
                let x = sorted_distinct(x, "candidate")?;
                if let Some(d) = x.iter().find(|d| self.base.binary_search(d).is_err()) {
                    return Err(Error::ShapeMismatch(format!("{d} is not a candidate")));
                }
                if x.len() > *limit {
                    return Err(Error::BoundViolation(format!("deletes {} candidates, limit {limit}", x.len())));
                }
                if inst.goal == Goal::Destructive && x.contains(&inst.distinguished) {
                    return Err(Error::BoundViolation(format!(
                        "destructive control may not delete {}",
                        inst.distinguished
                    )));
                }
                Ok(self.delete_candidates_unchecked(&x))
            }
            (
                InstanceKind::PartitionCandidates { tie } | InstanceKind::RunoffPartitionCandidates { tie },
                ControlAction::PartitionCandidates { first, second },
            ) => {
                let a = sorted_distinct(first, "candidate")?;
                let b = sorted_distinct(second, "candidate")?;
                let mut all = [a.as_slice(), b.as_slice()].concat();
                all.sort_unstable();
                if all != self.base {
                    return Err(Error::ShapeMismatch(format!(
                        "{} | {} is not a partition of {}",
                        brace_ids(&a),
                        brace_ids(&b),
                        brace_ids(&self.base)
                    )));
                }
                let runoff = matches!(inst.kind, InstanceKind::RunoffPartitionCandidates { .. });
                Ok(self.partition_candidates_unchecked(&a, &b, runoff, *tie))
            }
            (InstanceKind::AddVoters { unregistered, limit }, ControlAction::AddVoters(idx)) => {
                let idx = sorted_distinct(idx, "unregistered ballot")?;
                if idx.last().is_some_and(|&i| i >= unregistered.len()) {
                    return Err(Error::ShapeMismatch(format!("only {} unregistered ballots", unregistered.len())));
                }
                if idx.len() > *limit {
                    return Err(Error::BoundViolation(format!("adds {} ballots, limit {limit}", idx.len())));
                }
                Ok(self.add_voters_unchecked(&idx))
            }
            (InstanceKind::DeleteVoters { limit }, ControlAction::DeleteVoters(idx)) => {
                let idx = sorted_distinct(idx, "ballot")?;
                if idx.last().is_some_and(|&i| i >= inst.election.num_voters()) {
                    return Err(Error::ShapeMismatch(format!("only {} ballots", inst.election.num_voters())));
                }
                if idx.len() > *limit {
                    return Err(Error::BoundViolation(format!("deletes {} ballots, limit {limit}", idx.len())));
                }
                Ok(self.delete_voters_unchecked(&idx))
            }
            (InstanceKind::PartitionVoters { tie }, ControlAction::PartitionVoters { in_first }) => {
                if in_first.len() != inst.election.num_voters() {
                    return Err(Error::ShapeMismatch(format!(
                        "voter partition covers {} ballots, election has {}",
                        in_first.len(),
                        inst.election.num_voters()
                    )));
                }
                Ok(self.partition_voters_unchecked(in_first, *tie))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn goal_met(&mut self, action: &ControlAction) -> Result<bool> {
        let w = self.outcome(action)?;
        Ok(self.met(&w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::ids;

    fn first_last() -> SystemId {
        SystemId::hybrid(&["e_first", "e_last"])
    }

    fn spoiler_ac(goal: Goal) -> ControlInstance {
        let e = Election::from_ids(&[0, 1, 2], &[&[2, 1, 0]]).unwrap();
        ControlInstance::add_candidates(first_last(), goal, CandidateId(0), e, ids(&[1])).unwrap()
    }

    #[test]
    fn problem_codes_roundtrip() {
        let all = ControlProblem::all();
        assert_eq!(all.len(), 20);
        for p in all {
            assert_eq!(p.to_string().parse::<ControlProblem>().unwrap(), p);
        }
        assert_eq!("DCPV-TP".parse::<ControlProblem>().unwrap().to_string(), "DCPV-TP");
        assert!("CCPC".parse::<ControlProblem>().is_err());
        assert!("CCAC-TE".parse::<ControlProblem>().is_err());
        assert!("XXAC".parse::<ControlProblem>().is_err());
    }

    #[test]
    fn adding_the_spoiler_flips_routing() {
        let r = SystemRegistry::builtin();
        let inst = spoiler_ac(Goal::Constructive);
        let add = ControlAction::AddCandidates(ids(&[1]));
        assert_eq!(inst.outcome(&r, &add).unwrap().as_slice(), ids(&[0]));
        assert_eq!(inst.outcome(&r, &ControlAction::AddCandidates(vec![])).unwrap().as_slice(), ids(&[2]));
        assert!(inst.goal_met(&r, &add).unwrap());
        assert!(!spoiler_ac(Goal::Destructive).goal_met(&r, &add).unwrap());
    }

    #[test]
    fn partition_examples() {
        let r = SystemRegistry::builtin();
        let e = Election::from_ids(&[0, 1, 2], &[&[2, 1, 0]]).unwrap();
        let act = ControlAction::PartitionCandidates { first: ids(&[0, 1]), second: ids(&[2]) };
        for tie in TieModel::BOTH {
            let pc = ControlInstance::partition_candidates(first_last(), Goal::Constructive, CandidateId(2), e.clone(), tie)
                .unwrap();
            assert_eq!(pc.outcome(&r, &act).unwrap().as_slice(), ids(&[2]));
            let rpc =
                ControlInstance::runoff_partition_candidates(first_last(), Goal::Constructive, CandidateId(2), e.clone(), tie)
                    .unwrap();
            assert_eq!(rpc.outcome(&r, &act).unwrap().as_slice(), ids(&[2]));
        }
    }

    #[test]
    fn empty_deletion_keeps_a_unique_winner() {
        let r = SystemRegistry::builtin();
        let e = Election::from_ids(&[1, 2], &[&[1, 2]]).unwrap();
        let inst = ControlInstance::delete_candidates(SystemId::named("plurality"), Goal::Constructive, CandidateId(1), e, 0)
            .unwrap();
        assert!(inst.goal_met(&r, &ControlAction::DeleteCandidates(vec![])).unwrap());
    }

    #[test]
    fn action_checks() {
        let r = SystemRegistry::builtin();
        let e = Election::from_ids(&[1, 2, 3], &[&[1, 2, 3], &[2, 3, 1]]).unwrap();
        let p = SystemId::named("plurality");
        let dc = ControlInstance::delete_candidates(p.clone(), Goal::Destructive, CandidateId(1), e.clone(), 1).unwrap();
        assert!(matches!(dc.outcome(&r, &ControlAction::DeleteCandidates(ids(&[1]))), Err(Error::BoundViolation(_))));
        assert!(matches!(dc.outcome(&r, &ControlAction::DeleteCandidates(ids(&[2, 3]))), Err(Error::BoundViolation(_))));
        assert!(matches!(dc.outcome(&r, &ControlAction::DeleteCandidates(ids(&[9]))), Err(Error::ShapeMismatch(_))));
        assert!(matches!(dc.outcome(&r, &ControlAction::AddVoters(vec![])), Err(Error::ShapeMismatch(_))));
        let cc = dc.with_goal(Goal::Constructive);
        assert!(cc.outcome(&r, &ControlAction::DeleteCandidates(ids(&[1]))).is_ok());
        let pv = ControlInstance::partition_voters(p.clone(), Goal::Constructive, CandidateId(1), e.clone(), TieModel::TiesEliminate)
            .unwrap();
        assert!(pv.outcome(&r, &ControlAction::PartitionVoters { in_first: vec![true] }).is_err());
        let pc = ControlInstance::partition_candidates(p, Goal::Constructive, CandidateId(1), e, TieModel::TiesEliminate).unwrap();
        let overlapping = ControlAction::PartitionCandidates { first: ids(&[1, 2]), second: ids(&[2, 3]) };
        assert!(pc.outcome(&r, &overlapping).is_err());
    }

    #[test]
    fn voter_actions_preserve_order() {
        let r = SystemRegistry::builtin();
        let e = Election::from_ids(&[0, 1], &[&[0, 1]]).unwrap();
        let w = vec![Ballot::from_ids(&[1, 0]).unwrap()];
        let first = SystemId::named("e_first");
        let av = ControlInstance::add_voters(first.clone(), Goal::Constructive, CandidateId(0), e.clone(), w, 1).unwrap();
        assert!(av.outcome(&r, &ControlAction::AddVoters(vec![0])).unwrap().is_empty());
        assert!(av.goal_met(&r, &ControlAction::AddVoters(vec![])).unwrap());
        let dv = ControlInstance::delete_voters(first, Goal::Destructive, CandidateId(0), e, 1).unwrap();
        assert!(dv.goal_met(&r, &ControlAction::DeleteVoters(vec![0])).unwrap());
    }

    #[test]
    fn voter_partition_with_empty_side_runs_the_system_on_no_ballots() {
        let r = SystemRegistry::builtin();
        let e = Election::from_ids(&[1, 2], &[&[1, 2], &[1, 2], &[2, 1]]).unwrap();
        let pv = ControlInstance::partition_voters(
            SystemId::named("plurality"),
            Goal::Constructive,
            CandidateId(2),
            e,
            TieModel::TiesPromote,
        )
        .unwrap();
        // the empty side elects both under plurality, so both reach the final
        let all_first = ControlAction::PartitionVoters { in_first: vec![true; 3] };
        assert_eq!(pv.outcome(&r, &all_first).unwrap().as_slice(), ids(&[1]));
    }

    #[test]
    fn instance_invariants() {
        let e = Election::from_ids(&[0, 1], &[&[0, 1]]).unwrap();
        let s = SystemId::named("plurality");
        assert!(ControlInstance::delete_candidates(s.clone(), Goal::Constructive, CandidateId(5), e.clone(), 0).is_err());
        assert!(ControlInstance::add_candidates(s.clone(), Goal::Constructive, CandidateId(0), e.clone(), ids(&[0])).is_err());
        assert!(ControlInstance::add_candidates(s.clone(), Goal::Constructive, CandidateId(0), e.clone(), ids(&[7])).is_err());
        assert!(ControlInstance::delete_voters(s.clone(), Goal::Constructive, CandidateId(0), e.clone(), 2).is_err());
        assert!(ControlInstance::add_voters(s, Goal::Constructive, CandidateId(0), e, vec![], 1).is_err());
    }

    #[test]
    fn text_format_roundtrip() {
        let text = "type CCAC\nsystem hybrid:e_first,e_last\ndistinguished 0\ncandidates 0 2\nspoilers 1\nballot 2 > 1 > 0\n";
        let inst = ControlInstance::parse(text).unwrap();
        assert_eq!(inst, spoiler_ac(Goal::Constructive));
        assert_eq!(inst.to_string(), text);
        assert_eq!(inst.base_candidates(), ids(&[0, 2]));

        let av = "type DCAV\nsystem plurality\ndistinguished 1\nk 1\ncandidates 1 2\nballot 1 > 2\nunregistered-ballot 2 > 1\n";
        let inst = ControlInstance::parse(av).unwrap();
        assert_eq!(inst.to_string(), av);
        assert_eq!(ControlInstance::parse(&inst.to_string()).unwrap(), inst);

        let with_tie_line = "type CCPV\ntie TP\nsystem condorcet\ndistinguished 1\ncandidates 1 2\nballot 1 > 2\n";
        let inst = ControlInstance::parse(with_tie_line).unwrap();
        assert_eq!(inst.problem().to_string(), "CCPV-TP");
        assert_eq!(ControlInstance::parse(&inst.to_string()).unwrap(), inst);
        let defaulted = ControlInstance::parse("type CCPC\nsystem condorcet\ndistinguished 1\ncandidates 1\n").unwrap();
        assert_eq!(defaulted.problem().to_string(), "CCPC-TE");
    }

    #[test]
    fn text_format_errors() {
        let cases = [
            "system plurality\ndistinguished 1\ncandidates 1\n",
            "type CCDC\nsystem plurality\ndistinguished 1\ncandidates 1\n",
            "type CCPC-TE\nk 1\nsystem plurality\ndistinguished 1\ncandidates 1\n",
            "type CCPC-TE\ntie TP\nsystem plurality\ndistinguished 1\ncandidates 1\n",
            "type CCDV\nk 0\nsystem plurality\ndistinguished 1\ncandidates 1\nspoilers 2\n",
            "type CCDV\nk 0\nsystem plurality\ndistinguished 1\ncandidates 1\nunregistered-ballot 1\n",
            "type CCDV\nk 0\nsystem plurality\ndistinguished 1\ncandidates 1\nbogus\n",
        ];
        for text in cases {
            assert!(ControlInstance::parse(text).is_err(), "{text}");
        }
    }
}
