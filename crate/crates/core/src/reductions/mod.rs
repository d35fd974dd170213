//! NP-complete source problems, their brute-force oracles, and the
//! transformations into control instances.

mod graph;
mod x3c;

use std::fmt;

pub use graph::{
    even_half_oracle, odd_half_oracle, reduce_half_vc, reduce_vc_to_ccdc, vc_oracle, GraphInstance, VC_MAX_VERTICES,
};
pub use x3c::{reduce_x3c, x3c_delete_voters_clamped, x3c_oracle, X3CInstance, X3C_MAX_SETS};

use crate::control::{ControlAction, ControlInstance, ControlProblem, ControlType, Goal};
use crate::error::{Error, Result};
use crate::solvers::Decider;

/// A source problem instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceInstance {
    X3c(X3CInstance),
    /// Cover of size at most `k`.
    VertexCover(GraphInstance, usize),
    OddHalfVertexCover(GraphInstance),
    EvenHalfVertexCover(GraphInstance),
}

impl SourceInstance {
    pub fn oracle(&self) -> Result<bool> {
        match self {
            SourceInstance::X3c(i) => x3c_oracle(i),
            SourceInstance::VertexCover(g, k) => vc_oracle(g, *k),
            SourceInstance::OddHalfVertexCover(g) => odd_half_oracle(g),
            SourceInstance::EvenHalfVertexCover(g) => even_half_oracle(g),
        }
    }

    /// The problems this source reduces to.
    pub fn targets(&self) -> Vec<ControlProblem> {
        let codes: &[&str] = match self {
            SourceInstance::X3c(_) => &["DCDV", "DCAV", "DCPV-TE"],
            SourceInstance::VertexCover(..) => &["CCDC"],
            SourceInstance::OddHalfVertexCover(_) => &["CCRPC-TE", "CCRPC-TP"],
            SourceInstance::EvenHalfVertexCover(_) => {
                &["CCPC-TE", "CCPC-TP", "DCDC", "DCPC-TE", "DCPC-TP", "DCRPC-TE", "DCRPC-TP"]
            }
        };
        codes.iter().map(|c| c.parse().expect("valid code")).collect()
    }

    pub fn reduce(&self, target: ControlProblem) -> Result<ReductionInstance> {
        let (instance, clamped) = match self {
            SourceInstance::X3c(i) => {
                let clamped = target.kind == ControlType::DeleteVoters && x3c_delete_voters_clamped(i);
                (reduce_x3c(i, target)?, clamped)
            }
            SourceInstance::VertexCover(g, k) => {
                if target != ControlProblem::new(Goal::Constructive, ControlType::DeleteCandidates) {
                    return Err(Error::InvariantViolation(format!("no vertex cover reduction to {target}")));
                }
                (reduce_vc_to_ccdc(g, *k)?, false)
            }
            SourceInstance::OddHalfVertexCover(g) => {
                if !matches!(target.kind, ControlType::RunoffPartitionCandidates(_)) {
                    return Err(Error::InvariantViolation(format!("no odd half vertex cover reduction to {target}")));
                }
                (reduce_half_vc(g, target)?, false)
            }
            SourceInstance::EvenHalfVertexCover(g) => {
                if target.goal == Goal::Constructive && matches!(target.kind, ControlType::RunoffPartitionCandidates(_)) {
                    return Err(Error::InvariantViolation(format!("no even half vertex cover reduction to {target}")));
                }
                (reduce_half_vc(g, target)?, false)
            }
        };
        Ok(ReductionInstance { source: self.clone(), target: instance, clamped })
    }
}

/// A source instance paired with its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub source: SourceInstance,
    pub target: ControlInstance,
    /// The image uses a trivial-NO encoding instead of the literal construction.
    pub clamped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub problem: ControlProblem,
    pub source_answer: bool,
    pub target_answer: bool,
    pub equivalent: bool,
    pub clamped: bool,
    pub witness: Option<ControlAction>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "YES" } else { "NO" };
        write!(f, "{}: source {} target {}", self.problem, yn(self.source_answer), yn(self.target_answer))?;
        if self.clamped {
            write!(f, " (clamped)")?;
        }
        write!(f, " {}", if self.equivalent { "PASS" } else { "FAIL" })
    }
}

/// Decides both sides and compares.
pub fn verify_reduction(reduction: &ReductionInstance, decider: &dyn Decider) -> Result<VerificationReport> {
    let source_answer = reduction.source.oracle()?;
    let d = decider.decide(&reduction.target)?;
    Ok(VerificationReport {
        problem: reduction.target.problem(),
        source_answer,
        target_answer: d.answer,
        equivalent: source_answer == d.answer,
        clamped: reduction.clamped,
        witness: d.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::BruteForce;

    fn check(source: SourceInstance, code: &str, expected: bool) {
        let r = source.reduce(code.parse().unwrap()).unwrap();
        let rep = verify_reduction(&r, &BruteForce::default()).unwrap();
        assert_eq!((rep.source_answer, rep.target_answer), (expected, expected), "{code}");
        assert!(rep.equivalent);
    }

    #[test]
    fn x3c_examples() {
        let yes = SourceInstance::X3c(X3CInstance::new(vec![1, 2, 3], vec![[1, 2, 3]]).unwrap());
        check(yes.clone(), "DCDV", true);
        check(yes, "DCAV", true);
        let no = SourceInstance::X3c(X3CInstance::new((1..=6).collect(), vec![[1, 2, 3], [1, 2, 4]]).unwrap());
        check(no, "DCDV", false);
    }

    #[test]
    fn graph_examples() {
        let tri = GraphInstance::with_order(3, vec![(1, 2), (2, 3), (1, 3)]).unwrap();
        check(SourceInstance::VertexCover(tri.clone(), 2), "CCDC", true);
        check(SourceInstance::VertexCover(tri.clone(), 1), "CCDC", false);
        check(SourceInstance::OddHalfVertexCover(tri), "CCRPC-TE", true);
        let edge = GraphInstance::with_order(2, vec![(1, 2)]).unwrap();
        check(SourceInstance::VertexCover(edge.clone(), 1), "CCDC", true);
        check(SourceInstance::EvenHalfVertexCover(edge.clone()), "CCPC-TE", true);
        check(SourceInstance::EvenHalfVertexCover(edge), "DCDC", true);
    }

    #[test]
    fn clamped_delete_voters() {
        let s = SourceInstance::X3c(X3CInstance::new((1..=6).collect(), vec![[1, 2, 3]]).unwrap());
        let r = s.reduce("DCDV".parse().unwrap()).unwrap();
        assert!(r.clamped);
        assert_eq!(r.target.limit(), Some(0));
        let empty = SourceInstance::X3c(X3CInstance::new(vec![1, 2, 3], vec![]).unwrap());
        let r = empty.reduce("DCDV".parse().unwrap()).unwrap();
        assert_eq!(r.target.election().num_voters(), 2);
        let rep = verify_reduction(&r, &BruteForce::default()).unwrap();
        assert!(rep.equivalent && rep.clamped);
    }
}
