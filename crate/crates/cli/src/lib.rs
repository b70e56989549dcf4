//! Corpus loading, batch verification and reports for `baer`.

pub mod compute;
pub mod corpus;
pub mod run;
pub mod table;

use baer_core::pairmult::{HomologyOracle, Interpretation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use corpus::{default_corpus, load_corpus, Corpus, CorpusError};
use run::{run_checks, CheckId, Config};
use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InterpretationArg {
    Literal,
    Reduced,
}

impl From<InterpretationArg> for Interpretation {
    fn from(a: InterpretationArg) -> Self {
        match a {
            InterpretationArg::Literal => Interpretation::Literal,
            InterpretationArg::Reduced => Interpretation::Reduced,
        }
    }
}

/// Verify multiplier identities for pairs of finite groups.
///
/// Without a subcommand, runs the requested checks over the corpus, prints a
/// table and optionally writes the JSON report. Exit codes: 0 when no
/// structural check fails, 1 on a structural FAIL or an invalid group or
/// pair, 2 on configuration or I/O errors.
#[derive(Debug, Parser)]
#[command(name = "baer", version, args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one invariant.
    Compute(ComputeArgs),
}

#[derive(Debug, Args, Clone)]
pub struct Shared {
    /// Corpus JSON; the built-in corpus when absent.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Largest group order for H_2 computations.
    #[arg(long, default_value_t = 16)]
    pub max_order: usize,
    /// Largest group order for H_3 computations.
    #[arg(long, default_value_t = 12)]
    pub h3_max_order: usize,
    /// Nilpotency class c.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub c: u8,
    #[arg(long, value_enum, default_value_t = InterpretationArg::Reduced)]
    pub interpretation: InterpretationArg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckList(pub Vec<CheckId>);

fn parse_checks(s: &str) -> Result<CheckList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            CheckId::from_str(x, true).map_err(|_| {
                let known: Vec<&str> = CheckId::ALL.iter().map(|c| c.id()).collect();
                format!("unknown check {x:?}; known: {}", known.join(", "))
            })
        })
        .collect::<Result<_, _>>()
        .map(CheckList)
}

#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub shared: Shared,
    /// Comma-separated check ids; all checks when absent, none when empty.
    #[arg(long, value_parser = parse_checks)]
    pub checks: Option<CheckList>,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run on one thread in a fixed order.
    #[arg(long)]
    pub sequential: bool,
    /// Seed for partner selection in the free-product checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Clone)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub invariant: compute::Invariant,
    #[command(flatten)]
    pub shared: Shared,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub pair: Option<String>,
    /// Second pair for the free-product invariants.
    #[arg(long)]
    pub with: Option<String>,
    #[arg(long)]
    pub presentation: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
}

fn corpus_from(shared: &Shared) -> Result<Corpus, CorpusError> {
    match &shared.corpus {
        Some(p) => load_corpus(p),
        None => Ok(default_corpus()),
    }
}

impl Shared {
    fn bounds(&self) -> baer_core::homology::HomologyBounds {
        baer_core::homology::HomologyBounds { max_order: self.max_order, h3_max_order: self.h3_max_order }
    }
}

/// Runs the command line and returns the exit code.
pub fn main_with(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match cli.command {
        Some(Command::Compute(args)) => {
            let corpus = match corpus_from(&args.shared) {
                Ok(c) => c,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return e.exit_code();
                }
            };
            let req = compute::Request {
                invariant: Some(args.invariant),
                group: args.group,
                pair: args.pair,
                with: args.with,
                presentation: args.presentation,
                degree: args.degree,
                c: args.shared.c as usize,
                interpretation: args.shared.interpretation.into(),
            };
            let oracle = HomologyOracle::new(args.shared.bounds());
            match compute::compute(&corpus, &req, &oracle) {
                Ok(s) => {
                    let _ = writeln!(stdout, "{s}");
                    0
                }
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    2
                }
            }
        }
        None => {
            let a = cli.run;
            let corpus = match corpus_from(&a.shared) {
                Ok(c) => c,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return e.exit_code();
                }
            };
            let config = Config {
                checks: a.checks.map_or_else(|| CheckId::ALL.to_vec(), |l| l.0),
                max_order: a.shared.max_order,
                h3_max_order: a.shared.h3_max_order,
                c: a.shared.c as usize,
                interpretation: a.shared.interpretation.into(),
                seed: a.seed,
                sequential: a.sequential,
            };
            let report = run_checks(&corpus, &config);
            if let Some(path) = &a.out {
                let json = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = std::fs::write(path, json + "\n") {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            let _ = write!(stdout, "{}", table::render(&report));
            report.exit_code
        }
    }
}
