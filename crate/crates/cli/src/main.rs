//! `pairpart`: solve, verify and scan pair-partition instances from the shell.
//!
//! Exit codes: 0 feasible or passed, 2 certified negative, 1 error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pairpart",
    version,
    about = "Pair partitions, translate packing and related certificates"
)]
struct Cli {
    /// Worker threads for scans and exhaustive checks.
    #[arg(long, global = true, env = "PAIRPART_THREADS")]
    threads: Option<usize>,
    /// Output format; `tsv` is available for conjecture scans only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split Z/(n) (or (F_p)^k) into pairs with prescribed differences.
    Partition(PartitionArgs),
    /// Choose translates making sets pairwise disjoint.
    Pack(InputArgs),
    /// Compare the three routes to the Dyson constant term.
    Dyson(DysonArgs),
    /// Grid coefficient of a polynomial via the Nullstellensatz interpolation sum.
    CnCoeff(CnArgs),
    /// Run the solver over all (or sampled) unit difference vectors mod n.
    ConjectureScan(ScanArgs),
    /// Check |A+B| >= beta_p(|A|,|B|) in Z/(p^alpha).
    Sumset(SumsetArgs),
    /// Re-check a solution document produced by `partition` or `pack`.
    Verify(InputArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON file, or `-` for standard input.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Inline JSON document.
    #[arg(long, conflicts_with = "input")]
    json: Option<String>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long, requires = "d", conflicts_with_all = ["input", "json"])]
    n: Option<u64>,
    /// Differences, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    d: Option<Vec<i64>>,
    #[arg(long, value_enum, requires = "n")]
    universe: Option<UniverseArg>,
    #[command(flatten)]
    source: InputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum UniverseArg {
    Nonzero,
    Full,
}

#[derive(Debug, Args)]
pub struct DysonArgs {
    /// Exponents a_1, …, a_n.
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct CnArgs {
    /// Build the pairing polynomial of F_p for the differences `--d`.
    #[arg(long, requires = "d", conflicts_with_all = ["input", "json"])]
    p: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    d: Option<Vec<u64>>,
    /// Also search the grid for a point where the polynomial is nonzero.
    #[arg(long)]
    witness: bool,
    #[command(flatten)]
    source: InputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    n: u64,
    /// Number of seeded random difference vectors instead of all of them.
    #[arg(long, requires = "seed")]
    sample: Option<u64>,
    #[arg(long, requires = "sample")]
    seed: Option<u64>,
    /// Newline-delimited JSON of completed shards, resumed when present.
    #[arg(long, conflicts_with = "sample")]
    checkpoint: Option<PathBuf>,
    /// Include wall time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
pub struct SumsetArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    alpha: u32,
    /// Enumerate every pair of nonempty subsets.
    #[arg(long, conflicts_with_all = ["sample", "a"])]
    exhaustive: bool,
    #[arg(long, requires = "seed", conflicts_with = "a")]
    sample: Option<u64>,
    #[arg(long, requires = "sample")]
    seed: Option<u64>,
    /// A single pair: residues of A and B, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        requires = "b",
        allow_negative_numbers = true
    )]
    a: Option<Vec<i64>>,
    #[arg(
        long,
        value_delimiter = ',',
        requires = "a",
        allow_negative_numbers = true
    )]
    b: Option<Vec<i64>>,
    /// Maximum number of equality cases listed (all are counted).
    #[arg(long, default_value_t = 100)]
    max_tight: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match &cli.command {
        Command::ConjectureScan(args) => commands::conjecture_scan(args, cli.threads, cli.format),
        _ if cli.format == Format::Tsv => Err(anyhow::anyhow!(
            "tsv output is only available for conjecture-scan"
        )),
        Command::Partition(args) => commands::partition(args),
        Command::Pack(args) => commands::pack(args),
        Command::Dyson(args) => commands::dyson(args),
        Command::CnCoeff(args) => commands::cn_coeff(args),
        Command::Sumset(args) => commands::sumset(args),
        Command::Verify(args) => commands::verify(args),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
