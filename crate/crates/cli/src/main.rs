//! `pal`: parse, evaluate, announce, classify and search from the shell.
//!
//! Machine-readable output goes to stdout, a short human summary to stderr.
//! Exit codes: 0 ok, 2 formula syntax, 3 invalid model, 4 precondition,
//! 5 internal defect.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use palkit::classify::{classify, RuleSet};
use palkit::formula::{to_nnf, AgentId, Formula};
use palkit::kripke::{KripkeError, KripkeModel, ModelError};
use palkit::oracle::{
    check_supermodel_preservation, find_selfref_counterexample, find_success_counterexample, is_self_refuting_on,
    is_super_successful_on, selfref_failures, success_failures, SearchBounds, SearchError, Strategy,
};
use palkit::verify::verify_single_terms;
use palkit::worldset::WorldSet;

#[derive(Parser)]
#[command(name = "pal", version, about = "Public announcement logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    Paper,
    Validated,
}

impl From<Rules> for RuleSet {
    fn from(r: Rules) -> RuleSet {
        match r {
            Rules::Paper => RuleSet::Paper,
            Rules::Validated => RuleSet::Validated,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Chain,
    RandomTree,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Success,
    SelfRefutation,
    Supermodel,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical form.
    Parse {
        formula: String,
        /// Print the negation normal form instead.
        #[arg(long)]
        nnf: bool,
    },
    /// Evaluate a formula at one world of a model.
    Eval {
        model: PathBuf,
        formula: String,
        /// World to evaluate at; defaults to the model's designated world.
        #[arg(long)]
        world: Option<String>,
    },
    /// Announce a formula and write the restricted model.
    Announce {
        model: PathBuf,
        formula: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a formula as successful, unsuccessful or unknown.
    Classify {
        formula: String,
        #[arg(long, value_enum, default_value = "validated")]
        rules: Rules,
    },
    /// Check success, self-refutation and super-success on a given model.
    Check { model: PathBuf, formula: String },
    /// Bounded counter-model search.
    Search {
        formula: String,
        #[arg(long, default_value_t = 4)]
        max_worlds: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated agents; defaults to the formula's agents.
        #[arg(long, value_delimiter = ',')]
        agents: Vec<String>,
        #[arg(long, value_enum, default_value = "success")]
        property: PropertyArg,
        /// Omit timing so repeated runs give identical output.
        #[arg(long)]
        stable: bool,
    },
    /// Cross-check the classifier against the oracle on all single terms.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_ops: usize,
        #[arg(long, default_value_t = 2)]
        agents: usize,
        #[arg(long, default_value_t = 5)]
        max_worlds: usize,
        #[arg(long, value_enum, default_value = "validated")]
        rules: Rules,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Failure {
        let code = if matches!(e, SearchError::CorruptWitness(_)) { 5 } else { 4 };
        Failure::new(code, e.to_string())
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    palkit::parse(text).map_err(|e| Failure::new(2, format!("syntax error {e}")))
}

fn model(path: &Path) -> Result<(KripkeModel, Option<usize>), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(3, format!("{}: {e}", path.display())))?;
    KripkeModel::from_json(&text).map_err(|e| match e {
        ModelError::Json(_) | ModelError::Invalid(_) => Failure::new(3, format!("{}: {e}", path.display())),
    })
}

fn names(m: &KripkeModel, s: WorldSet) -> Vec<&str> {
    s.iter().map(|w| m.world_name(w)).collect()
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Parse { formula: text, nnf } => {
            let f = formula(&text)?;
            let out = if nnf { to_nnf(&f).map_err(|e| Failure::new(4, e.to_string()))? } else { f };
            println!("{out}");
        }
        Command::Eval { model: path, formula: text, world } => {
            let f = formula(&text)?;
            let (m, designated) = model(&path)?;
            let w = match world {
                Some(name) => m.world_index(&name).map_err(|e| Failure::new(4, e.to_string()))?,
                None => designated.ok_or_else(|| Failure::new(4, "no --world given and the model has no designated world"))?,
            };
            println!("{}", m.holds_at(w, &f));
        }
        Command::Announce { model: path, formula: text, out } => {
            let f = formula(&text)?;
            let (m, designated) = model(&path)?;
            let kept = m.truth_set(&f);
            let after = m.restrict(&f).map_err(|e| match e {
                KripkeError::EmptyModel => Failure::new(4, format!("{f} is false at every world; nothing survives")),
                other => Failure::new(4, other.to_string()),
            })?;
            let point = designated.filter(|&d| kept.contains(d)).and_then(|d| after.world_index(m.world_name(d)).ok());
            let text = after.to_json(point);
            match out {
                Some(p) => fs::write(&p, text + "\n").map_err(|e| Failure::new(4, format!("{}: {e}", p.display())))?,
                None => println!("{text}"),
            }
            eprintln!("deleted worlds: {:?}", names(&m, m.universe().minus(kept)));
        }
        Command::Classify { formula: text, rules } => {
            let f = formula(&text)?;
            let verdict = classify(&f, rules.into());
            let out = verdict.to_json(&f);
            if let Some(e) = out.get("witness_error") {
                return Err(Failure::new(5, format!("witness construction failed: {e}")));
            }
            print(&out);
            eprintln!("{f}: {:?}", verdict.status);
        }
        Command::Check { model: path, formula: text } => {
            let f = formula(&text)?;
            let (m, _) = model(&path)?;
            let super_ok = is_super_successful_on(&m, &f);
            print(&json!({
                "formula": f.to_string(),
                "true_at": names(&m, m.truth_set(&f)),
                "successful": success_failures(&m, &f).is_empty(),
                "success_failures": names(&m, success_failures(&m, &f)),
                "self_refuting": is_self_refuting_on(&m, &f),
                "self_refutation_failures": names(&m, selfref_failures(&m, &f)),
                "super_successful": super_ok.as_ref().ok(),
                "super_successful_note": super_ok.err().map(|e| e.to_string()),
            }));
        }
        Command::Search { formula: text, max_worlds, strategy, samples, seed, agents, property, stable } => {
            let f = formula(&text)?;
            let agents: Vec<AgentId> = if agents.is_empty() {
                let mine: Vec<AgentId> = f.agents().into_iter().collect();
                if mine.is_empty() {
                    vec![AgentId::new("a").unwrap()]
                } else {
                    mine
                }
            } else {
                agents
                    .iter()
                    .map(|a| AgentId::new(a.as_str()).map_err(|e| Failure::new(4, e.to_string())))
                    .collect::<Result<_, _>>()?
            };
            let strategy = match strategy {
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::Chain => Strategy::Chain,
                StrategyArg::RandomTree => Strategy::RandomTree { samples, seed },
            };
            let bounds = SearchBounds::new(max_worlds, agents, strategy)?;
            let report = match property {
                PropertyArg::Success => find_success_counterexample(&f, &bounds)?,
                PropertyArg::SelfRefutation => find_selfref_counterexample(&f, &bounds)?,
                PropertyArg::Supermodel => check_supermodel_preservation(&f, &bounds)?,
            };
            print(&report.to_json(stable));
            eprintln!(
                "{f}: {} after {} models",
                if report.found() { "counter-model found" } else { "none up to bound" },
                report.models_examined
            );
        }
        Command::Verify { max_ops, agents, max_worlds, rules } => {
            if agents == 0 || max_ops == 0 {
                return Err(Failure::new(4, "--agents and --max-ops must be positive"));
            }
            let report = verify_single_terms(max_ops, agents, max_worlds, rules.into())?;
            print(&serde_json::to_value(&report).unwrap());
            eprintln!(
                "agreements {}, disagreements {}, unknown {}",
                report.agreements, report.disagreements, report.unknown
            );
            for e in report.disagreeing() {
                eprintln!("  disagree: {} ({:?})", e.formula, e.rule);
            }
            if report.disagreements > 0 && matches!(rules, Rules::Validated) {
                return Err(Failure::new(5, "validated rules disagree with the oracle"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
