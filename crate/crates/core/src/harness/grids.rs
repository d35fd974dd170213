//! Exhaustive and seeded-random agreement grids.

use itertools::Itertools;

use crate::control::{ControlInstance, ControlProblem, ControlType, Goal, TieModel};
use crate::election::{Ballot, CandidateId, Election};
use crate::error::Result;
use crate::reductions::{verify_reduction, GraphInstance, SourceInstance, X3CInstance};
use crate::solvers::{
    BruteForce, Combinations, Decider, Decision, DestructivePoly, E1PrefixDeleteCandidates, E1TriEvenPartition,
    E1TriRunoffPartition, PolyDispatcher, RouteVoters,
};
use crate::systems::SystemId;

use super::checks::{limit_monotone, monotone_answers, witness_sound, GridReport};
use super::inheritance::inheritance_check;
use super::random::{random_instance, trial_rng, Bounds};
use super::enumerate_tuples;

/// Every X3C instance over `{1..m}` for `m` in `base_sizes` whose family is a
/// set of at most `max_sets` distinct triples, in size-then-lexicographic order.
pub fn x3c_instances(base_sizes: &[usize], max_sets: usize) -> Vec<X3CInstance> {
    let mut out = Vec::new();
    for &m in base_sizes {
        let triples: Vec<[u32; 3]> =
            Combinations::new(m, 3).map(|t| [t[0] as u32 + 1, t[1] as u32 + 1, t[2] as u32 + 1]).collect();
        for size in 0..=max_sets.min(triples.len()) {
            for pick in Combinations::new(triples.len(), size) {
                let sets = pick.iter().map(|&i| triples[i]).collect();
                out.push(X3CInstance::new((1..=m as u32).collect(), sets).expect("valid by construction"));
            }
        }
    }
    out
}

/// Every simple graph on vertices `1..=n`.
pub fn all_graphs(n: u32) -> Vec<GraphInstance> {
    let pairs: Vec<(u32, u32)> = (1..=n).tuple_combinations().collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            GraphInstance::with_order(n, edges).expect("valid by construction")
        })
        .collect()
}

fn describe(inst: &ControlInstance) -> String {
    inst.to_string().trim_end().replace('\n', "; ")
}

/// Decides with `decider`, recording witness soundness and, for limited types,
/// monotonicity in the limit.
fn checked(brute: &BruteForce, decider: &dyn Decider, inst: &ControlInstance, report: &mut GridReport) -> Result<Decision> {
    let d = decider.decide(inst)?;
    let sound = witness_sound(brute.systems(), inst, &d)?;
    report.soundness(sound, || describe(inst));
    if inst.limit().is_some() {
        let mono = limit_monotone(decider, inst, &d)?;
        report.monotonicity(mono, || describe(inst));
    }
    Ok(d)
}

fn verify_all(
    brute: &BruteForce,
    sources: impl IntoIterator<Item = SourceInstance>,
    targets: &[ControlProblem],
    label: &str,
) -> Result<Vec<GridReport>> {
    let mut reports: Vec<GridReport> = targets.iter().map(|t| GridReport::new(format!("{label} -> {t}"))).collect();
    for source in sources {
        for (t, report) in targets.iter().zip(reports.iter_mut()) {
            let r = source.reduce(*t)?;
            let v = verify_reduction(&r, brute)?;
            report.case(v.equivalent, || format!("{:?} -> {}", source, describe(&r.target)));
            let d = Decision { answer: v.target_answer, witness: v.witness };
            report.soundness(witness_sound(brute.systems(), &r.target, &d)?, || describe(&r.target));
            if r.target.limit().is_some() {
                report.monotonicity(limit_monotone(brute, &r.target, &d)?, || describe(&r.target));
            }
        }
    }
    Ok(reports)
}

fn codes(list: &[&str]) -> Vec<ControlProblem> {
    list.iter().map(|c| c.parse().expect("valid code")).collect()
}

/// X3C against its three destructive voter-control images, `|B|` in {3, 6},
/// at most five sets.
pub fn x3c_grid(brute: &BruteForce) -> Result<Vec<GridReport>> {
    verify_all(brute, x3c_instances(&[3, 6], 5).into_iter().map(SourceInstance::X3c), &codes(&["DCDV", "DCAV", "DCPV-TE"]), "x3c")
}

/// Vertex Cover against constructive deleting candidates, all graphs on at
/// most four vertices and every `k <= n`.
pub fn vc_grid(brute: &BruteForce) -> Result<Vec<GridReport>> {
    let sources = (0..=4u32).flat_map(|n| {
        all_graphs(n).into_iter().flat_map(move |g| (0..=n as usize).map(move |k| SourceInstance::VertexCover(g.clone(), k)))
    });
    verify_all(brute, sources, &codes(&["CCDC"]), "vertex cover")
}

/// Odd half cover on three vertices; even half cover on two and four vertices.
pub fn half_grids(brute: &BruteForce) -> Result<Vec<GridReport>> {
    let mut out = verify_all(
        brute,
        all_graphs(3).into_iter().map(SourceInstance::OddHalfVertexCover),
        &codes(&["CCRPC-TE", "CCRPC-TP"]),
        "odd half cover",
    )?;
    let even = all_graphs(2).into_iter().chain(all_graphs(4)).map(SourceInstance::EvenHalfVertexCover);
    out.extend(verify_all(
        brute,
        even,
        &codes(&["CCPC-TE", "CCPC-TP", "DCDC", "DCPC-TE", "DCPC-TP", "DCRPC-TE", "DCRPC-TP"]),
        "even half cover",
    )?);
    Ok(out)
}

/// Seeded random instances for each of the twenty problems, posed for a
/// constituent of `hybrid(plurality, condorcet, not_all_one)` and compared with
/// their `3c + i` images.
pub fn embedding_grid(brute: &BruteForce, trials: u64, seed: u64) -> Result<Vec<GridReport>> {
    let parts = [SystemId::named("plurality"), SystemId::named("condorcet"), SystemId::named("not_all_one")];
    let bounds = Bounds::new(4, 5, 8);
    let mut reports = Vec::new();
    for (p_index, problem) in ControlProblem::all().into_iter().enumerate() {
        let mut report = GridReport::new(format!("embedding {problem}"));
        for t in 0..trials {
            let mut rng = trial_rng(seed, (p_index as u64) << 32 | t);
            let i = (t % 3) as usize;
            let inst = random_instance(&mut rng, &parts[i], problem, bounds);
            let r = inheritance_check(brute, &parts, i, &inst)?;
            report.case(r.agree(), || format!("constituent {i}: {}", describe(&inst)));
            report.soundness(witness_sound(brute.systems(), &inst, &r.constituent)?, || describe(&inst));
            report.soundness(witness_sound(brute.systems(), &r.image, &r.hybrid)?, || describe(&r.image));
        }
        reports.push(report);
    }
    Ok(reports)
}

/// Seeded random voter-control instances on `hybrid(plurality, condorcet)` with
/// names from `0..8`, comparing the routed decision with exhaustive search.
pub fn route_voters_grid(brute: &BruteForce, trials: u64, seed: u64) -> Result<Vec<GridReport>> {
    let hybrid = SystemId::hybrid(&["plurality", "condorcet"]);
    let mut registry = crate::solvers::DeciderRegistry::new();
    registry.set_fallback(std::sync::Arc::new(brute.clone()));
    let routed = RouteVoters::new(std::sync::Arc::new(registry));
    let mut reports = Vec::new();
    for (p_index, problem) in ControlProblem::all().into_iter().enumerate() {
        if !problem.kind.is_voter_control() {
            continue;
        }
        let mut report = GridReport::new(format!("routed voters {problem}"));
        for t in 0..trials {
            let mut rng = trial_rng(seed, (p_index as u64) << 32 | t);
            let inst = random_instance(&mut rng, &hybrid, problem, Bounds::new(4, 5, 8));
            let fast = checked(brute, &routed, &inst, &mut report)?;
            let slow = brute.decide(&inst)?;
            report.case(fast.answer == slow.answer, || describe(&inst));
        }
        reports.push(report);
    }
    Ok(reports)
}

fn permutations(cands: &[CandidateId]) -> Vec<Ballot> {
    cands.iter().copied().permutations(cands.len()).map(|p| Ballot::new(p).expect("permutation")).collect()
}

fn ids_upto(m: usize) -> Vec<CandidateId> {
    (0..m as u32).map(CandidateId).collect()
}

fn compare(
    brute: &BruteForce,
    poly: &dyn Decider,
    inst: &ControlInstance,
    report: &mut GridReport,
) -> Result<(bool, bool)> {
    let p = poly.decide(inst)?;
    let b = brute.decide(inst)?;
    report.case(p.answer == b.answer, || describe(inst));
    report.soundness(witness_sound(brute.systems(), inst, &p)?, || format!("poly on {}", describe(inst)));
    report.soundness(witness_sound(brute.systems(), inst, &b)?, || format!("search on {}", describe(inst)));
    Ok((p.answer, b.answer))
}

/// Adding candidates on `hybrid(e_first, e_last)`: every candidate set drawn
/// from `{0,1,2,3}`, every `c`, every spoiler set, every profile of up to three
/// voters, both goals.
pub fn ccac_hybrid_grid(brute: &BruteForce) -> Result<GridReport> {
    let poly = PolyDispatcher::new(brute.clone());
    let system = SystemId::hybrid(&["e_first", "e_last"]);
    let mut report = GridReport::new("hybrid adding candidates");
    let universe = ids_upto(4);
    for size in 1..=universe.len() {
        for pick in Combinations::new(universe.len(), size) {
            let cands: Vec<CandidateId> = pick.iter().map(|&i| universe[i]).collect();
            let perms = permutations(&cands);
            for voters in 0..=3 {
                enumerate_tuples(perms.len(), voters, false, |idx| {
                    let e = Election::new(cands.clone(), idx.iter().map(|&i| perms[i].clone()).collect())?;
                    for &c in &cands {
                        let others: Vec<CandidateId> = cands.iter().copied().filter(|&x| x != c).collect();
                        for mask in 0u32..1 << others.len() {
                            let spoilers: Vec<CandidateId> =
                                others.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &d)| d).collect();
                            for goal in [Goal::Constructive, Goal::Destructive] {
                                let inst = ControlInstance::add_candidates(system.clone(), goal, c, e.clone(), spoilers.clone())?;
                                compare(brute, &poly, &inst, &mut report)?;
                            }
                        }
                    }
                    Ok(())
                })?;
            }
        }
    }
    Ok(report)
}

/// Ballot 1 first, then ballot 2 from `second`, then `rest` ballots from `tail`
/// (as a multiset when `multiset`); ballot 1 alone when `voters == 1`.
fn profiles(
    first: &Ballot,
    second: &[Ballot],
    tail: &[Ballot],
    voters: usize,
    multiset: bool,
    mut f: impl FnMut(Vec<Ballot>) -> Result<()>,
) -> Result<()> {
    match voters {
        0 => f(vec![]),
        1 => f(vec![first.clone()]),
        _ => {
            for b2 in second {
                enumerate_tuples(tail.len(), voters - 2, multiset, |idx| {
                    let mut v = vec![first.clone(), b2.clone()];
                    v.extend(idx.iter().map(|&i| tail[i].clone()));
                    f(v)
                })?;
            }
            Ok(())
        }
    }
}

/// `above` (ascending), then `c`, then the rest ascending.
fn ranked_below(cands: &[CandidateId], above: &[CandidateId], c: CandidateId) -> Ballot {
    let mut r = above.to_vec();
    r.push(c);
    r.extend(cands.iter().copied().filter(|x| *x != c && !above.contains(x)));
    Ballot::new_unchecked(r)
}

/// Constructive deleting candidates on `e1_prefix`, `|C| <= 5`, `|V| <= 4`,
/// every `k < |C|`.
///
/// Ballot 1 is fixed to `0 > 1 > ...` (every profile is a renaming of one of
/// these). For `|C| <= 4` the remaining ballots range over all orders; for
/// `|C| = 5`, ballots 3 and 4 range over one order per set of candidates ranked
/// above `c`, as a multiset.
pub fn e1_prefix_grid(brute: &BruteForce) -> Result<GridReport> {
    let system = SystemId::named("e1_prefix");
    let mut report = GridReport::new("e1_prefix deleting candidates");
    for m in 1..=5 {
        let cands = ids_upto(m);
        let perms = permutations(&cands);
        let identity = Ballot::new_unchecked(cands.clone());
        for &c in &cands {
            let others: Vec<CandidateId> = cands.iter().copied().filter(|&x| x != c).collect();
            let tail: Vec<Ballot> = if m <= 4 {
                perms.clone()
            } else {
                (0u32..1 << others.len())
                    .map(|mask| {
                        let above: Vec<CandidateId> =
                            others.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &d)| d).collect();
                        ranked_below(&cands, &above, c)
                    })
                    .collect()
            };
            for voters in 0..=4 {
                profiles(&identity, &perms, &tail, voters, m > 4, |ballots| {
                    let e = Election::new(cands.clone(), ballots)?;
                    let (mut poly_answers, mut brute_answers) = (Vec::new(), Vec::new());
                    for k in 0..m {
                        let inst = ControlInstance::delete_candidates(system.clone(), Goal::Constructive, c, e.clone(), k)?;
                        let (p, b) = compare(brute, &E1PrefixDeleteCandidates, &inst, &mut report)?;
                        poly_answers.push(p);
                        brute_answers.push(b);
                    }
                    let mono = monotone_answers(&poly_answers) && monotone_answers(&brute_answers);
                    report.monotonicity(mono, || format!("c={c} {e}"));
                    Ok(())
                })?;
            }
        }
    }
    Ok(report)
}

/// Constructive run-off partition on `e1_tri`, `|C| <= 4`, `|V|` in {1, 2, 4},
/// ballot 1 fixed to `0 > 1 > ...`, both tie models.
pub fn e1_tri_grid(brute: &BruteForce) -> Result<GridReport> {
    let system = SystemId::named("e1_tri");
    let mut report = GridReport::new("e1_tri run-off partition");
    for m in 1..=4 {
        let cands = ids_upto(m);
        let perms = permutations(&cands);
        let identity = Ballot::new_unchecked(cands.clone());
        for voters in [1, 2, 4] {
            profiles(&identity, &perms, &perms, voters, false, |ballots| {
                let e = Election::new(cands.clone(), ballots)?;
                for &c in &cands {
                    for tie in TieModel::BOTH {
                        let inst = ControlInstance::runoff_partition_candidates(system.clone(), Goal::Constructive, c, e.clone(), tie)?;
                        compare(brute, &E1TriRunoffPartition, &inst, &mut report)?;
                    }
                }
                Ok(())
            })?;
        }
    }
    Ok(report)
}

/// Constructive partition on `e1_tri_even`, `|C| <= 4`, `|V|` in {1, 2}, all
/// profiles, both tie models.
pub fn e1_tri_even_grid(brute: &BruteForce) -> Result<GridReport> {
    let system = SystemId::named("e1_tri_even");
    let mut report = GridReport::new("e1_tri_even partition");
    for m in 1..=4 {
        let cands = ids_upto(m);
        let perms = permutations(&cands);
        for voters in [1, 2] {
            enumerate_tuples(perms.len(), voters, false, |idx| {
                let e = Election::new(cands.clone(), idx.iter().map(|&i| perms[i].clone()).collect())?;
                for &c in &cands {
                    for tie in TieModel::BOTH {
                        let inst = ControlInstance::partition_candidates(system.clone(), Goal::Constructive, c, e.clone(), tie)?;
                        compare(brute, &E1TriEvenPartition, &inst, &mut report)?;
                    }
                }
                Ok(())
            })?;
        }
    }
    Ok(report)
}

/// Destructive deleting candidates (every `k < |C|`), partition and run-off
/// partition (both tie models) on `e0_dfirst` and `e1_second`, `|C| <= 4`,
/// `|V| <= 3`, all profiles.
pub fn destructive_grid(brute: &BruteForce) -> Result<GridReport> {
    let mut report = GridReport::new("destructive e0_dfirst / e1_second");
    for name in ["e0_dfirst", "e1_second"] {
        let system = SystemId::named(name);
        for m in 1..=4 {
            let cands = ids_upto(m);
            let perms = permutations(&cands);
            for voters in 0..=3 {
                enumerate_tuples(perms.len(), voters, false, |idx| {
                    let e = Election::new(cands.clone(), idx.iter().map(|&i| perms[i].clone()).collect())?;
                    for &c in &cands {
                        let (mut pa, mut ba) = (Vec::new(), Vec::new());
                        for k in 0..m {
                            let inst = ControlInstance::delete_candidates(system.clone(), Goal::Destructive, c, e.clone(), k)?;
                            let (p, b) = compare(brute, &DestructivePoly, &inst, &mut report)?;
                            pa.push(p);
                            ba.push(b);
                        }
                        report.monotonicity(monotone_answers(&pa) && monotone_answers(&ba), || format!("{name} c={c} {e}"));
                        for tie in TieModel::BOTH {
                            for kind in [ControlType::PartitionCandidates(tie), ControlType::RunoffPartitionCandidates(tie)] {
                                let problem = ControlProblem::new(Goal::Destructive, kind);
                                let inst = ControlInstance::for_problem(problem, system.clone(), c, e.clone(), 0, vec![], vec![])?;
                                compare(brute, &DestructivePoly, &inst, &mut report)?;
                            }
                        }
                    }
                    Ok(())
                })?;
            }
        }
    }
    Ok(report)
}
