//! `rfg` — residual finiteness growth toolkit.
//!
//! Subcommands: witness, verify, divide, growth, slk, selftest. Exit codes:
//! 0 success, 1 error, 2 identity/degenerate input, 3 budget exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rfg_core::{
    exact_divisibility, growth_table, separating_cover, slk_bounds_table,
    verify_certificate_json, CertificateError, CongruenceWitness, CongruenceWitnessSpec,
    GraphSpec, OmegaMode, OracleError, SimplicialGraph, SlkError, WitnessError, Word,
    CERTIFICATE_KIND, CONGRUENCE_KIND,
};

mod selftest;

#[derive(Parser)]
#[command(name = "rfg", version, about = "Separating covers and divisibility bounds for raAgs and SL_k(Z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a separating-cover certificate for a nontrivial word
    Witness(WitnessArgs),
    /// Re-check a stored certificate or congruence witness from file alone
    Verify { path: PathBuf },
    /// Exact divisibility of a word by exhaustive cover enumeration
    Divide(DivideArgs),
    /// Residual finiteness growth table over balls of increasing radius
    Growth(GrowthArgs),
    /// Lower/upper divisibility bounds table for SL_k(Z)
    Slk(SlkArgs),
    /// Run the built-in end-to-end checks
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Path to a graph JSON file {"vertices":[...],"edges":[["a","b"],...]}
    #[arg(long)]
    graph: Option<PathBuf>,
    /// The same JSON given inline
    #[arg(long)]
    graph_inline: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Subgroup,
    Normal,
}

impl From<ModeArg> for OmegaMode {
    fn from(m: ModeArg) -> OmegaMode {
        match m {
            ModeArg::Subgroup => OmegaMode::AllSubgroups,
            ModeArg::Normal => OmegaMode::NormalOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Word in token syntax, e.g. "a b^-1 c^2"
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct DivideArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Subgroup)]
    mode: ModeArg,
    /// Order budget for normal-mode quotient search
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct GrowthArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Subgroup)]
    mode: ModeArg,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct SlkArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n_max: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

/// Process-level failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn error(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }

    fn degenerate(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn budget(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Failure {
        match e {
            WitnessError::IdentityElement => Failure::degenerate(e.to_string()),
            other => Failure::error(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        match e {
            OracleError::IdentityElement => Failure::degenerate(e.to_string()),
            OracleError::BudgetExceeded { .. } => Failure::budget(e.to_string()),
            other => Failure::error(other.to_string()),
        }
    }
}

impl From<SlkError> for Failure {
    fn from(e: SlkError) -> Failure {
        match e {
            SlkError::IdentityInput | SlkError::CentralInput => Failure::degenerate(e.to_string()),
            other => Failure::error(other.to_string()),
        }
    }
}

fn load_graph(input: &GraphInput) -> Result<SimplicialGraph, Failure> {
    let raw = match (&input.graph, &input.graph_inline) {
        (Some(path), None) => fs::read_to_string(path)
            .map_err(|e| Failure::error(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(inline)) => inline.clone(),
        _ => return Err(Failure::error("exactly one of --graph/--graph-inline is required")),
    };
    let spec: GraphSpec = serde_json::from_str(&raw)
        .map_err(|e| Failure::error(format!("graph JSON: {e}")))?;
    SimplicialGraph::from_spec(&spec).map_err(|e| Failure::error(e.to_string()))
}

fn parse_word(graph: &SimplicialGraph, s: &str) -> Result<Word, Failure> {
    Word::parse(graph, s).map_err(|e| Failure::error(e.to_string()))
}

fn run_witness(args: &WitnessArgs) -> Result<String, Failure> {
    let graph = load_graph(&args.graph)?;
    let word = parse_word(&graph, &args.word)?;
    let cert = separating_cover(&graph, &word)?;
    match args.format {
        FormatArg::Json => Ok(cert.to_json(&graph)),
        FormatArg::Csv => Ok(format!(
            "# rfg-v1\nelement,degree,separates\n{},{},true\n",
            cert.element.display(&graph),
            cert.degree
        )),
    }
}

fn run_verify(path: &PathBuf) -> Result<String, Failure> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Failure::error(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&raw)
        .map_err(|e| Failure::error(format!("ParseError: {e}")))?;
    match value.get("kind").and_then(|k| k.as_str()) {
        Some(CERTIFICATE_KIND) => match verify_certificate_json(&raw) {
            Ok(()) => Ok(format!("ok {CERTIFICATE_KIND}")),
            Err(CertificateError::Failed { check, detail }) => {
                Err(Failure::error(format!("VerifyFailed[{check}]: {detail}")))
            }
            Err(other) => Err(Failure::error(other.to_string())),
        },
        Some(CONGRUENCE_KIND) => {
            let spec: CongruenceWitnessSpec = serde_json::from_str(&raw)
                .map_err(|e| Failure::error(format!("ParseError: {e}")))?;
            let witness =
                CongruenceWitness::from_spec(&spec).map_err(|e| Failure::error(e.to_string()))?;
            witness
                .verify()
                .map_err(|why| Failure::error(format!("VerifyFailed[{why}]")))?;
            Ok(format!("ok {CONGRUENCE_KIND}"))
        }
        _ => Err(Failure::error("ParseError: missing or unknown `kind` field")),
    }
}

fn run_divide(args: &DivideArgs) -> Result<String, Failure> {
    let graph = load_graph(&args.graph)?;
    let word = parse_word(&graph, &args.word)?;
    let result = exact_divisibility(&graph, &word, args.mode.into(), args.budget)?;
    match args.format {
        FormatArg::Json => {
            let payload = serde_json::json!({
                "value": result.value,
                "mode": result.mode.label(),
                "witness": result.witness.to_spec(&graph),
            });
            serde_json::to_string_pretty(&payload).map_err(|e| Failure::error(e.to_string()))
        }
        FormatArg::Csv => Ok(format!(
            "# rfg-v1\nvalue,mode,witness_degree\n{},{},{}\n",
            result.value,
            result.mode.label(),
            result.witness.degree()
        )),
    }
}

fn run_growth(args: &GrowthArgs) -> Result<String, Failure> {
    let graph = load_graph(&args.graph)?;
    if args.n_max == 0 {
        return Err(Failure::degenerate("n-max must be at least 1"));
    }
    let table = growth_table(&graph, args.n_max, args.mode.into(), args.budget)?;
    match args.format {
        FormatArg::Csv => Ok(table.to_csv(&graph)),
        FormatArg::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n,
                        "value": r.value,
                        "extremal_word": r.element.display(&graph),
                        "witness_index": r.witness_index,
                        "seconds": r.seconds,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).map_err(|e| Failure::error(e.to_string()))
        }
    }
}

fn run_slk(args: &SlkArgs) -> Result<String, Failure> {
    let table = slk_bounds_table(args.k, args.n_max)?;
    match args.format {
        FormatArg::Csv => Ok(table.to_csv()),
        FormatArg::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n,
                        "lcm": r.lcm.to_string(),
                        "lower": r.lower.to_string(),
                        "upper": r.upper.to_string(),
                        "p": r.p,
                        "slope_partial": r.slope_partial,
                    })
                })
                .collect();
            let payload = serde_json::json!({
                "k": table.k,
                "rows": rows,
                "slope_lower": table.slope_lower,
                "slope_upper": table.slope_upper,
            });
            serde_json::to_string_pretty(&payload).map_err(|e| Failure::error(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Witness(args) => run_witness(args),
        Command::Verify { path } => run_verify(path),
        Command::Divide(args) => run_divide(args),
        Command::Growth(args) => run_growth(args),
        Command::Slk(args) => run_slk(args),
        Command::Selftest { seed } => selftest::run(*seed),
    };
    match outcome {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("rfg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
