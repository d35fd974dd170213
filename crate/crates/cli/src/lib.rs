//! Command-line front end for the `hybrid-control` crate.
//!
//! [`run`] does all the work and returns the exit status with the report, so
//! the binary is a thin wrapper and tests can call it directly.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use hybrid_control::harness::grids;
use hybrid_control::harness::{anonymity_falsify, replay_worked_examples, Bounds, GridReport, DEFAULT_SEED};
use hybrid_control::reductions::{verify_reduction, GraphInstance, SourceInstance, X3CInstance};
use hybrid_control::solvers::{BruteForce, Decider, PolyDispatcher, DEFAULT_BUDGET};
use hybrid_control::{ControlInstance, ControlProblem, Election, Error, SystemId, SystemRegistry};

const GRAMMAR: &str = "\
Systems:
  plurality condorcet not_all_one e_first e_last e_null
  e0_solo e1_prefix e0_single e1_tri e1_tri_even e0_dfirst e1_second
  hybrid:<name>,<name>,...            default is the last constituent
  hybrid_base:<name>,...;default=<name>

Control types:
  CCAC CCDC CCPC-TE CCPC-TP CCRPC-TE CCRPC-TP CCAV CCDV CCPV-TE CCPV-TP
  DCAC DCDC DCPC-TE DCPC-TP DCRPC-TE DCRPC-TP DCAV DCDV DCPV-TE DCPV-TP

Exit status: 0 computed, 1 a check failed, 2 usage or input error, 3 search budget exceeded.";

#[derive(Parser, Debug)]
#[command(name = "hybrid-control", version, about = "Election systems, electoral control and reduction checks", after_help = GRAMMAR)]
struct Cli {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the winners of an election.
    Winners {
        #[arg(long)]
        system: SystemId,
        #[arg(long)]
        election: PathBuf,
    },
    /// Decide a control instance.
    Decide {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Solver::Brute)]
        solver: Solver,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Write the control instance a source instance reduces to.
    Reduce {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long)]
        to: ControlProblem,
        #[arg(long)]
        input: PathBuf,
        /// Cover bound for `vc`; overrides a `k` line in the graph file.
        #[arg(long)]
        k: Option<usize>,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide a source instance and each of its images, and compare.
    Verify {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long)]
        input: PathBuf,
        /// Only this target; all targets by default.
        #[arg(long)]
        to: Option<ControlProblem>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Look for a renaming that the system's winners do not follow.
    Anonymity {
        #[arg(long)]
        system: SystemId,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Run a built-in check suite.
    Suite {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Replay the four worked hybrid(e_first, e_last) examples.
    Replay,
    /// Compare constituent decisions with their images inside a hybrid.
    Inheritance {
        #[arg(long, default_value_t = 500)]
        trials: u64,
    },
    /// Compare every polynomial-time decider with exhaustive search.
    Agreement,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Solver {
    Brute,
    Poly,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Source {
    X3c,
    Vc,
    Ohvc,
    Ehvc,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(u8, String), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn source(kind: Source, path: &Path, k: Option<usize>) -> Result<SourceInstance, Failure> {
    let text = read(path)?;
    Ok(match kind {
        Source::X3c => SourceInstance::X3c(X3CInstance::parse(&text)?),
        Source::Vc => {
            let g = GraphInstance::parse(&text)?;
            let k = k.or(g.bound()).ok_or_else(|| Failure::Usage("vc needs a cover bound (--k or a `k` line)".into()))?;
            SourceInstance::VertexCover(g, k)
        }
        Source::Ohvc => SourceInstance::OddHalfVertexCover(GraphInstance::parse(&text)?),
        Source::Ehvc => SourceInstance::EvenHalfVertexCover(GraphInstance::parse(&text)?),
    })
}

fn trailer(out: &mut String, reports: &[GridReport]) -> u8 {
    let passed = reports.iter().filter(|r| r.passed()).count();
    for r in reports {
        writeln!(out, "{r}").unwrap();
    }
    let verdict = if passed == reports.len() { "PASS" } else { "FAIL" };
    writeln!(out, "{verdict} {passed}/{}", reports.len()).unwrap();
    u8::from(passed != reports.len())
}

fn execute(cli: Cli) -> Outcome {
    let registry = Arc::new(SystemRegistry::builtin());
    let mut out = String::new();
    let code = match cli.command {
        Command::Winners { system, election } => {
            let e = Election::parse(&read(&election)?)?;
            let w = registry.winners(&system, &e)?;
            let names: Vec<String> = w.iter().map(|c| c.to_string()).collect();
            writeln!(out, "winners: {}", if names.is_empty() { "none".into() } else { names.join(" ") }).unwrap();
            0
        }
        Command::Decide { instance, solver, budget } => {
            let inst = ControlInstance::parse(&read(&instance)?)?;
            let brute = BruteForce::new(registry).with_budget(budget);
            let decision = match solver {
                Solver::Brute => brute.decide(&inst)?,
                Solver::Poly => PolyDispatcher::new(brute).decide(&inst)?,
            };
            writeln!(out, "{decision}").unwrap();
            0
        }
        Command::Reduce { from, to, input, k, output } => {
            let r = source(from, &input, k)?.reduce(to)?;
            let text = r.target.to_string();
            match output {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
                    writeln!(out, "wrote {to} instance to {}", path.display()).unwrap();
                }
                None => out.push_str(&text),
            }
            if r.clamped {
                writeln!(out, "# clamped: fewer sets than |B|/3, emitted with k = 0").unwrap();
            }
            0
        }
        Command::Verify { from, input, to, k } => {
            let src = source(from, &input, k)?;
            let targets = match to {
                Some(t) => vec![t],
                None => src.targets(),
            };
            let brute = BruteForce::new(registry);
            let mut passed = 0;
            for t in &targets {
                let v = verify_reduction(&src.reduce(*t)?, &brute)?;
                passed += usize::from(v.equivalent);
                writeln!(out, "{v}").unwrap();
            }
            let verdict = if passed == targets.len() { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {passed}/{}", targets.len()).unwrap();
            u8::from(passed != targets.len())
        }
        Command::Anonymity { system, trials } => {
            match anonymity_falsify(&registry, &system, trials, Bounds::new(5, 6, 10), cli.seed)? {
                Some(w) => {
                    writeln!(out, "{w}").unwrap();
                    writeln!(out, "FAIL {system}: renaming changes the winners").unwrap();
                    1
                }
                None => {
                    writeln!(out, "PASS {system}: no violation in {trials} trials (seed {})", cli.seed).unwrap();
                    0
                }
            }
        }
        Command::Suite { suite: Suite::Replay } => {
            let results = replay_worked_examples(&registry);
            let mut passed = 0;
            for r in &results {
                match r {
                    Ok(s) => {
                        passed += 1;
                        writeln!(out, "{s}").unwrap();
                    }
                    Err(e) => writeln!(out, "{e}").unwrap(),
                }
            }
            let verdict = if passed == results.len() { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {passed}/{}", results.len()).unwrap();
            u8::from(passed != results.len())
        }
        Command::Suite { suite: Suite::Inheritance { trials } } => {
            let reports = grids::embedding_grid(&BruteForce::new(registry), trials, cli.seed)?;
            trailer(&mut out, &reports)
        }
        Command::Suite { suite: Suite::Agreement } => {
            let brute = BruteForce::new(registry);
            let reports = vec![
                grids::ccac_hybrid_grid(&brute)?,
                grids::e1_prefix_grid(&brute)?,
                grids::e1_tri_grid(&brute)?,
                grids::e1_tri_even_grid(&brute)?,
                grids::destructive_grid(&brute)?,
            ];
            trailer(&mut out, &reports)
        }
    };
    Ok((code, out))
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> (u8, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => (2, format!("error: {msg}\n")),
        Err(Failure::Lib(e @ Error::BudgetExceeded { .. })) => (3, format!("error: {e}\n")),
        Err(Failure::Lib(e)) => (2, format!("error: {e}\n")),
    }
}
