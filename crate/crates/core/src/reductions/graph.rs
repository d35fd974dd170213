use std::fmt;

use crate::control::{ControlInstance, ControlProblem, ControlType, Goal};
use crate::election::{content_lines, parse_err, parse_usize, split_key, Ballot, CandidateId, Election};
use crate::error::{Error, Result};
use crate::systems::SystemId;

/// Largest graph the cover oracles will enumerate.
pub const VC_MAX_VERTICES: usize = 16;

/// A simple undirected graph with an optional cover bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInstance {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32)>,
    k: Option<usize>,
}

impl GraphInstance {
    /// Normalizes each edge to `(low, high)` and sorts; rejects loops, repeated
    /// edges and edges to unknown vertices.
    pub fn new(mut vertices: Vec<u32>, edges: Vec<(u32, u32)>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvariantViolation("repeated vertex".into()));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvariantViolation(format!("loop at vertex {a}")));
            }
            for x in [a, b] {
                if vertices.binary_search(&x).is_err() {
                    return Err(Error::InvariantViolation(format!("edge endpoint {x} is not a vertex")));
                }
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvariantViolation("repeated edge".into()));
        }
        Ok(GraphInstance { vertices, edges: norm, k: None })
    }

    /// Vertices labeled `1..=n`.
    pub fn with_order(n: u32, edges: Vec<(u32, u32)>) -> Result<Self> {
        GraphInstance::new((1..=n).collect(), edges)
    }

    pub fn with_bound(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn bound(&self) -> Option<usize> {
        self.k
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// `vertices N` (labels `1..=N`), then `edge a b` lines, and optionally `k K`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut k = None;
        let mut edges = Vec::new();
        for (lineno, line) in content_lines(text) {
            let (key, rest) = split_key(line);
            match key {
                "vertices" if n.is_none() => n = Some(parse_usize(rest, lineno)?),
                "k" if k.is_none() => k = Some(parse_usize(rest, lineno)?),
                "vertices" | "k" => return Err(parse_err(lineno, format!("duplicate {key} line"))),
                "edge" => {
                    let ends: Vec<u32> = rest
                        .split_whitespace()
                        .map(|t| t.parse().map_err(|_| parse_err(lineno, format!("bad vertex {t:?}"))))
                        .collect::<Result<_>>()?;
                    match ends.as_slice() {
                        &[a, b] => edges.push((a, b)),
                        _ => return Err(parse_err(lineno, "an edge needs exactly two vertices")),
                    }
                }
                _ => return Err(parse_err(lineno, format!("unknown directive {key:?}"))),
            }
        }
        let n = n.ok_or_else(|| parse_err(0, "missing vertices line"))?;
        let n = u32::try_from(n).map_err(|_| parse_err(0, "too many vertices"))?;
        let g = GraphInstance::with_order(n, edges)?;
        Ok(match k {
            Some(k) => g.with_bound(k),
            None => g,
        })
    }

    fn budget_check(&self) -> Result<()> {
        if self.order() > VC_MAX_VERTICES {
            return Err(Error::BudgetExceeded { required: 1 << self.order(), budget: 1 << VC_MAX_VERTICES });
        }
        Ok(())
    }

    /// Sizes of all vertex covers, as a bitmask over `0..=n`.
    fn cover_sizes(&self) -> Result<u64> {
        self.budget_check()?;
        let index = |x: u32| self.vertices.binary_search(&x).expect("validated");
        let edges: Vec<u32> = self.edges.iter().map(|&(a, b)| 1 << index(a) | 1 << index(b)).collect();
        let mut sizes = 0u64;
        for set in 0u32..1 << self.order() {
            if edges.iter().all(|&e| set & e != 0) {
                sizes |= 1 << set.count_ones();
            }
        }
        Ok(sizes)
    }

    /// A vertex cover with at most `k` vertices exists.
    pub fn has_cover_at_most(&self, k: usize) -> Result<bool> {
        let sizes = self.cover_sizes()?;
        Ok((0..=k.min(self.order())).any(|s| sizes >> s & 1 == 1))
    }

    /// A vertex cover with exactly `size` vertices exists.
    pub fn has_cover_of_size(&self, size: usize) -> Result<bool> {
        let sizes = self.cover_sizes()?;
        Ok(size <= self.order() && sizes >> size & 1 == 1)
    }

    /// Ascending original labels become `2, 4, ..., 2n`.
    fn relabel(&self, v: u32) -> u32 {
        2 * (self.vertices.binary_search(&v).expect("vertex") as u32 + 1)
    }

    fn relabeled_edges(&self) -> Vec<(u32, u32)> {
        let mut e: Vec<(u32, u32)> = self.edges.iter().map(|&(a, b)| (self.relabel(a), self.relabel(b))).collect();
        e.sort_unstable();
        e
    }
}

impl fmt::Display for GraphInstance {
    /// Only graphs labeled `1..=n` are written faithfully.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.order())?;
        if let Some(k) = self.k {
            writeln!(f, "k {k}")?;
        }
        for (a, b) in &self.edges {
            writeln!(f, "edge {a} {b}")?;
        }
        Ok(())
    }
}

/// Vertex Cover: a cover of size at most `k`.
pub fn vc_oracle(g: &GraphInstance, k: usize) -> Result<bool> {
    g.has_cover_at_most(k)
}

/// Odd Half Vertex Cover: `n` odd and greater than 1, a cover of size `(n+1)/2`.
pub fn odd_half_oracle(g: &GraphInstance) -> Result<bool> {
    let n = g.order();
    if n % 2 == 0 || n < 3 {
        return Err(Error::ParityViolation { vertices: n, target: "odd half vertex cover".into() });
    }
    g.has_cover_of_size((n + 1) / 2)
}

/// Even Half Vertex Cover: `n` even and positive, a cover of size `n/2`.
pub fn even_half_oracle(g: &GraphInstance) -> Result<bool> {
    let n = g.order();
    if n % 2 == 1 || n == 0 {
        return Err(Error::ParityViolation { vertices: n, target: "even half vertex cover".into() });
    }
    g.has_cover_of_size(n / 2)
}

fn ballot(first: &[u32], all: &[u32]) -> Ballot {
    let mut r: Vec<CandidateId> = first.iter().map(|&x| CandidateId(x)).collect();
    r.extend(all.iter().filter(|x| !first.contains(x)).map(|&x| CandidateId(x)));
    Ballot::new_unchecked(r)
}

fn election(all: &[u32], ballots: Vec<Ballot>) -> Election {
    Election::new_unchecked(all.iter().map(|&x| CandidateId(x)).collect(), ballots)
}

/// Candidates `extra` together with the relabeled vertices, sorted.
fn candidate_set(g: &GraphInstance, extra: &[u32]) -> Vec<u32> {
    let mut all: Vec<u32> = extra.to_vec();
    all.extend((1..=g.order() as u32).map(|i| 2 * i));
    all.sort_unstable();
    all
}

/// Vertex Cover to constructive deleting candidates on `hybrid(e0_solo, e1_prefix)`.
pub fn reduce_vc_to_ccdc(g: &GraphInstance, k: usize) -> Result<ControlInstance> {
    if k > g.order() {
        return Err(Error::InvariantViolation(format!("cover bound {k} exceeds {} vertices", g.order())));
    }
    let all = candidate_set(g, &[0, 1]);
    let mut ballots = vec![ballot(&[0], &all), ballot(&[1, 0], &all)];
    ballots.extend(g.relabeled_edges().into_iter().map(|(i, j)| ballot(&[i, j, 0], &all)));
    ControlInstance::delete_candidates(
        SystemId::hybrid(&["e0_solo", "e1_prefix"]),
        Goal::Constructive,
        CandidateId(0),
        election(&all, ballots),
        k,
    )
}

fn pad(mut ballots: Vec<Ballot>, first: Ballot, total: usize) -> Result<Vec<Ballot>> {
    if ballots.len() + 1 > total {
        return Err(Error::TooManyEdges { edges: ballots.len(), voters: total });
    }
    ballots.insert(0, first.clone());
    ballots.resize(total, first);
    Ok(ballots)
}

/// Odd/Even Half Vertex Cover to the half-cover control targets.
///
/// CCRPC (either tie model) takes odd `n` and `hybrid(e0_single, e1_tri)`. CCPC
/// takes even `n` and `hybrid(e0_single, e1_tri_even)`. DCDC, DCPC and DCRPC take
/// even `n` and `hybrid(e0_dfirst, e1_second)` with `(n+4)^2` voters and deletion
/// limit `n/2`.
pub fn reduce_half_vc(g: &GraphInstance, target: ControlProblem) -> Result<ControlInstance> {
    let n = g.order();
    let edges = g.relabeled_edges();
    let parity = |odd: bool| {
        let ok = if odd { n % 2 == 1 && n > 1 } else { n % 2 == 0 && n > 0 };
        if ok {
            Ok(())
        } else {
            Err(Error::ParityViolation { vertices: n, target: target.to_string() })
        }
    };
    let c = CandidateId(0);
    let tri = 1 + n * n.saturating_sub(1) / 2;
    match (target.goal, target.kind) {
        (Goal::Constructive, ControlType::RunoffPartitionCandidates(tie)) => {
            parity(true)?;
            let all = candidate_set(g, &[0, 1, 3]);
            let edge_ballots = edges.iter().map(|&(i, j)| ballot(&[3, i, j, 0], &all)).collect();
            let ballots = pad(edge_ballots, ballot(&[0, 3], &all), tri)?;
            ControlInstance::runoff_partition_candidates(
                SystemId::hybrid(&["e0_single", "e1_tri"]),
                Goal::Constructive,
                c,
                election(&all, ballots),
                tie,
            )
        }
        (Goal::Constructive, ControlType::PartitionCandidates(tie)) => {
            parity(false)?;
            let all = candidate_set(g, &[0, 1]);
            let edge_ballots = edges.iter().map(|&(i, j)| ballot(&[i, j, 0], &all)).collect();
            let ballots = pad(edge_ballots, ballot(&[0, 1], &all), tri)?;
            ControlInstance::partition_candidates(
                SystemId::hybrid(&["e0_single", "e1_tri_even"]),
                Goal::Constructive,
                c,
                election(&all, ballots),
                tie,
            )
        }
        (Goal::Destructive, kind @ (ControlType::DeleteCandidates
        | ControlType::PartitionCandidates(_)
        | ControlType::RunoffPartitionCandidates(_))) => {
            parity(false)?;
            let all = candidate_set(g, &[0, 1]);
            let edge_ballots = edges.iter().map(|&(i, j)| ballot(&[i, j, 0], &all)).collect();
            let ballots = pad(edge_ballots, ballot(&[1, 0], &all), (n + 4) * (n + 4))?;
            let system = SystemId::hybrid(&["e0_dfirst", "e1_second"]);
            let e = election(&all, ballots);
            match kind {
                ControlType::DeleteCandidates => {
                    ControlInstance::delete_candidates(system, Goal::Destructive, c, e, n / 2)
                }
                ControlType::PartitionCandidates(tie) => {
                    ControlInstance::partition_candidates(system, Goal::Destructive, c, e, tie)
                }
                ControlType::RunoffPartitionCandidates(tie) => {
                    ControlInstance::runoff_partition_candidates(system, Goal::Destructive, c, e, tie)
                }
                _ => unreachable!(),
            }
        }
        _ => Err(Error::InvariantViolation(format!("no half vertex cover reduction to {target}"))),
    }
}
