//! Subcommand driver. All configuration arrives through flags; identical
//! invocations produce byte-identical output.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 verification mismatch,
//! 3 brute-force window over the configured limit.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curveideal_core::enumerate::EnumError;
use curveideal_core::{
    brute_force_ordersets, classify_ideals, enumerate_up_to, verify_family, Semigroup,
};

use crate::doc::{Doc, FamilyDoc, ReportDoc, SemigroupDoc};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "curveideal",
    about = "Classify finite-codimension ideals of monomial curve rings k[[t^S]]",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate all order sets of codimension 1 through the given bound
    Ordersets(CommonArgs),
    /// Classify the parametric ideal families at the given codimension
    Ideals(CommonArgs),
    /// Instantiate every family at seeded random parameters and check it
    Verify(VerifyArgs),
    /// Enumerate order sets by exhaustive search (the oracle path)
    Bruteforce(BruteforceArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Semigroup generators, comma separated (e.g. 3,4)
    #[arg(long, value_delimiter = ',')]
    pub semigroup: Option<Vec<u64>>,
    /// Codimension bound (ordersets) or target codimension (other commands)
    #[arg(long)]
    pub codim: Option<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the output bytes to a file as well as stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Re-render the table from a previously written JSON document
    #[arg(long, conflicts_with_all = ["semigroup", "codim"])]
    pub from_json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Random instantiations per family (boundary probes are added on top)
    #[arg(long, default_value_t = 20)]
    pub trials: u32,
    /// Seed for the deterministic assignment stream
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BruteforceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Upper bound on candidate gap sets before giving up
    #[arg(long, default_value_t = 10_000_000)]
    pub limit: u128,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit: i32,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            exit: EXIT_INPUT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

pub struct RunOutput {
    pub stdout: String,
    pub exit: i32,
}

/// Executes a parsed command line: computes (or replays) the document,
/// renders it, honors `--out`, and reports the exit code.
pub fn execute(cli: Cli) -> Result<RunOutput, CliError> {
    let (doc, common, exit) = match cli.command {
        Command::Ordersets(args) => {
            let (doc, exit) = match load_replay(&args)? {
                Some(doc) => (doc, EXIT_OK),
                None => {
                    let (semigroup, codim) = parse_inputs(&args)?;
                    let chain = enumerate_up_to(&semigroup, codim);
                    (Doc::order_sets_from_chain(&semigroup, &chain), EXIT_OK)
                }
            };
            (doc, args, exit)
        }
        Command::Ideals(args) => {
            let (doc, exit) = match load_replay(&args)? {
                Some(doc) => (doc, EXIT_OK),
                None => {
                    let (semigroup, codim) = parse_inputs(&args)?;
                    let families = classify_ideals(&semigroup, codim);
                    let mut doc = Doc {
                        semigroup: SemigroupDoc::from_semigroup(&semigroup),
                        codim,
                        order_sets: families
                            .iter()
                            .map(|f| crate::doc::OrderSetDoc::from_module(&f.order_set))
                            .collect(),
                        families: Some(families.iter().map(FamilyDoc::from_family).collect()),
                        report: None,
                    };
                    doc.order_sets.sort_by(|a, b| a.gaps.cmp(&b.gaps));
                    (doc, EXIT_OK)
                }
            };
            (doc, args, exit)
        }
        Command::Verify(args) => {
            let (doc, exit) = match load_replay(&args.common)? {
                Some(doc) => {
                    let exit = doc_mismatches(&doc);
                    (doc, exit)
                }
                None => {
                    if args.trials < 1 {
                        return Err(CliError::input("--trials must be at least 1"));
                    }
                    let (semigroup, codim) = parse_inputs(&args.common)?;
                    let families = classify_ideals(&semigroup, codim);
                    let reports: Vec<ReportDoc> = families
                        .iter()
                        .map(|f| {
                            ReportDoc::from_report(f, &verify_family(f, args.trials, args.seed))
                        })
                        .collect();
                    let doc = Doc {
                        semigroup: SemigroupDoc::from_semigroup(&semigroup),
                        codim,
                        order_sets: families
                            .iter()
                            .map(|f| crate::doc::OrderSetDoc::from_module(&f.order_set))
                            .collect(),
                        families: Some(families.iter().map(FamilyDoc::from_family).collect()),
                        report: Some(reports),
                    };
                    let exit = doc_mismatches(&doc);
                    (doc, exit)
                }
            };
            (doc, args.common, exit)
        }
        Command::Bruteforce(args) => {
            let (doc, exit) = match load_replay(&args.common)? {
                Some(doc) => (doc, EXIT_OK),
                None => {
                    let (semigroup, codim) = parse_inputs(&args.common)?;
                    let family =
                        brute_force_ordersets(&semigroup, codim, args.limit).map_err(|e| {
                            let EnumError::WindowTooLarge { .. } = e;
                            CliError {
                                message: e.to_string(),
                                exit: EXIT_LIMIT,
                            }
                        })?;
                    let doc = Doc::order_sets_from_chain(&semigroup, &[family]);
                    (doc, EXIT_OK)
                }
            };
            (doc, args.common, exit)
        }
    };

    let stdout = match common.format {
        Format::Table => render::table(&doc),
        Format::Json => render::json(&doc),
    };
    if let Some(path) = &common.out {
        std::fs::write(path, &stdout)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(RunOutput { stdout, exit })
}

fn doc_mismatches(doc: &Doc) -> i32 {
    let mismatched = doc.report.iter().flatten().any(|r| r.mismatches() > 0);
    if mismatched {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

fn parse_inputs(args: &CommonArgs) -> Result<(Semigroup, usize), CliError> {
    let gens = args
        .semigroup
        .as_ref()
        .ok_or_else(|| CliError::input("--semigroup is required (or use --from-json)"))?;
    let codim = args
        .codim
        .ok_or_else(|| CliError::input("--codim is required (or use --from-json)"))?;
    if codim < 1 {
        return Err(CliError::input("--codim must be at least 1"));
    }
    let semigroup = Semigroup::from_generators(gens).map_err(|e| CliError::input(e.to_string()))?;
    Ok((semigroup, codim))
}

fn load_replay(args: &CommonArgs) -> Result<Option<Doc>, CliError> {
    let Some(path) = &args.from_json else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let doc: Doc = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("invalid document in {}: {e}", path.display())))?;
    Ok(Some(doc))
}
