//! `gfkit` — exact integer sequences from weighted counting automata.
//!
//! Exit codes: 0 success (and full agreement for `verify`), 1 verification
//! or identity failure, 2 usage or parse errors, 3 convergence rejection.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use gfkit::automaton::AutomatonError;
use gfkit::catalog::{FamilyCatalogEntry, Method};
use gfkit::engine::EngineError;
use gfkit::families::{integer_terms, FamilyError};
use gfkit::identities::run_identities;
use gfkit::oracle::BRUTE_CAP;
use gfkit::{parse_automaton, solve_system, FamilyParams};
use gfkit_cli::report;

const EXIT_DISAGREE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_CONVERGENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gfkit",
    version,
    about = "Exact lattice-path sequences via counting automata, continued fractions and closed forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print terms a(0)..a(n) of a catalog family (or of an automaton file)
    Seq(SeqArgs),
    /// Run every applicable method plus the oracles and report agreement
    Verify(VerifyArgs),
    /// Check the cross-family identity suite up to a bound
    Identities(IdentitiesArgs),
    /// Solve an automaton description file and print its word counts
    Automaton(AutomatonArgs),
}

#[derive(Args)]
struct SeqArgs {
    /// Family name (see `gfkit seq --help` for the list)
    #[arg(
        value_name = "FAMILY",
        long_help = "One of: motzkin, dyck, riordan, schroeder, kcolored, gen_motzkin, fk, grand_motzkin, trinomial"
    )]
    family: Option<String>,
    /// Solve this automaton file instead of a catalog family
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    automaton: Option<PathBuf>,
    /// Last term index to print
    #[arg(long, default_value_t = 32)]
    n: usize,
    /// cf | radical | sum | formula | dp | brute (default: cf)
    #[arg(long)]
    method: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Family parameter k (kcolored, gen_motzkin, fk)
    #[arg(long)]
    k: Option<u64>,
    /// Trinomial rise weight
    #[arg(long)]
    a: Option<u64>,
    /// Trinomial level weight
    #[arg(long)]
    b: Option<u64>,
    /// Trinomial fall weight
    #[arg(long)]
    c: Option<u64>,
    /// Series working order (defaults to just enough for n)
    #[arg(long)]
    order: Option<usize>,
    /// Continued-fraction depth override (cf method only)
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Family name
    family: String,
    /// Last term index to compare
    #[arg(long, default_value_t = 32)]
    n: usize,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    c: Option<u64>,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Bound up to which every identity is checked
    #[arg(long, default_value_t = 40)]
    n: usize,
}

#[derive(Args)]
struct AutomatonArgs {
    /// Automaton description file
    file: PathBuf,
    /// Last term index to print
    #[arg(long, default_value_t = 32)]
    n: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Series working order (defaults to n + 1)
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Comma-separated terms on one line
    Csv,
    /// OEIS b-file lines `index value`
    Bfile,
    /// JSON object with the terms as strings
    Json,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        let code = match &e {
            FamilyError::Engine(EngineError::Automaton(AutomatonError::NotConvergent(_))) => {
                EXIT_NOT_CONVERGENT
            }
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<AutomatonError> for CliError {
    fn from(e: AutomatonError) -> Self {
        let code = match &e {
            AutomatonError::NotConvergent(_) => EXIT_NOT_CONVERGENT,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Automaton(a) => a.into(),
            other => CliError::usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Seq(args) => cmd_seq(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Identities(args) => cmd_identities(args),
        Command::Automaton(args) => cmd_automaton(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gfkit: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn resolve_entry(name: &str, params: FamilyParams) -> Result<FamilyCatalogEntry, CliError> {
    FamilyCatalogEntry::resolve(name, &params).map_err(CliError::from)
}

fn family_params(k: Option<u64>, a: Option<u64>, b: Option<u64>, c: Option<u64>) -> FamilyParams {
    FamilyParams { k, a, b, c }
}

fn cmd_seq(args: SeqArgs) -> Result<u8, CliError> {
    if let Some(file) = &args.automaton {
        if args.method.is_some() {
            return Err(CliError::usage(
                "--method applies to catalog families; automaton files are solved directly",
            ));
        }
        let terms = solve_automaton_file(file, args.n, args.order)?;
        let label = file.display().to_string();
        print!(
            "{}",
            render_terms(&label, &BTreeMap::new(), "solve", &terms, args.format)
        );
        return Ok(0);
    }

    let Some(family) = &args.family else {
        return Err(CliError::usage(
            "a family name or --automaton FILE is required",
        ));
    };
    let entry = resolve_entry(family, family_params(args.k, args.a, args.b, args.c))?;
    let method = match &args.method {
        None => entry.default_method(),
        Some(name) => Method::parse(name)
            .ok_or_else(|| CliError::usage(format!("unknown method '{name}'")))?,
    };
    let compute_to = match args.order {
        Some(order) if order > args.n + 1 => order - 1,
        _ => args.n,
    };
    let mut terms = entry.terms(method, compute_to, args.depth)?;
    terms.truncate(args.n + 1);

    let params: BTreeMap<String, u64> = entry
        .params()
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect();
    print!(
        "{}",
        render_terms(entry.name(), &params, method.name(), &terms, args.format)
    );
    Ok(0)
}

#[derive(Serialize)]
struct SeqOutput {
    family: String,
    params: BTreeMap<String, u64>,
    method: String,
    n: usize,
    terms: Vec<String>,
}

fn render_terms(
    family: &str,
    params: &BTreeMap<String, u64>,
    method: &str,
    terms: &[BigInt],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Csv => {
            let mut line = terms
                .iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>()
                .join(",");
            line.push('\n');
            line
        }
        OutputFormat::Bfile => {
            let mut out = String::new();
            for (i, t) in terms.iter().enumerate() {
                out.push_str(&format!("{i} {t}\n"));
            }
            out
        }
        OutputFormat::Json => {
            let payload = SeqOutput {
                family: family.to_string(),
                params: params.clone(),
                method: method.to_string(),
                n: terms.len().saturating_sub(1),
                terms: report::terms_to_strings(terms),
            };
            let mut s = serde_json::to_string_pretty(&payload).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let entry = resolve_entry(
        &args.family,
        family_params(args.k, args.a, args.b, args.c),
    )?;
    let mut methods: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut timings: BTreeMap<String, u64> = BTreeMap::new();
    let mut notes: Vec<String> = Vec::new();

    for method in entry.methods() {
        let mut n = args.n;
        if method == Method::Brute {
            // Exponential enumeration: cap the column instead of failing.
            n = n.min(14);
            while entry.path_length(n) > BRUTE_CAP {
                n -= 1;
            }
            if n < args.n {
                notes.push(format!(
                    "brute column capped at n = {n} (exhaustive enumeration)"
                ));
            }
        }
        let start = Instant::now();
        let terms = entry.terms(method, n, None)?;
        let elapsed = start.elapsed().as_millis() as u64;
        methods.insert(method.name().to_string(), report::terms_to_strings(&terms));
        timings.insert(method.name().to_string(), elapsed);
    }

    let agreement = report::SequenceReport::compute_agreement(&methods);
    let report = report::SequenceReport {
        family: entry.name().to_string(),
        params: entry
            .params()
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
        order: args.n + 1,
        methods,
        agreement,
        timings_ms: timings,
        notes,
    };
    print!("{}", report.render());
    Ok(if report.all_agree() { 0 } else { EXIT_DISAGREE })
}

fn cmd_identities(args: IdentitiesArgs) -> Result<u8, CliError> {
    let reports = run_identities(args.n);
    let mut failed = false;
    for r in &reports {
        match &r.failure {
            None => println!("identity {:<24} PASS (n <= {})", r.name, r.checked_to),
            Some(f) => {
                failed = true;
                println!(
                    "identity {:<24} FAIL at index {}: {} != {}",
                    r.name, f.index, f.lhs, f.rhs
                );
            }
        }
    }
    if failed {
        println!("identity suite: FAIL");
        Ok(EXIT_DISAGREE)
    } else {
        println!("identity suite: {} identities PASS", reports.len());
        Ok(0)
    }
}

fn cmd_automaton(args: AutomatonArgs) -> Result<u8, CliError> {
    let terms = solve_automaton_file(&args.file, args.n, args.order)?;
    let label = args.file.display().to_string();
    print!(
        "{}",
        render_terms(&label, &BTreeMap::new(), "solve", &terms, args.format)
    );
    Ok(0)
}

fn solve_automaton_file(
    file: &Path,
    n: usize,
    order: Option<usize>,
) -> Result<Vec<BigInt>, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", file.display())))?;
    let order = order.unwrap_or(0).max(n + 1);
    let automaton = parse_automaton(&text, order)?;
    automaton.validate_convergent().required()?;
    let solution = solve_system(&automaton, order)?;
    Ok(integer_terms(solution.root(), n))
}
