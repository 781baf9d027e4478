//! `painleve-probe`: command-line front end for the Painleve test engine.
//!
//! `analyze` runs the full battery of necessary conditions on one equation
//! (from a file, standard input, or `--expr`) and prints a deterministic
//! text or JSON report; `corpus` does the same for every `.ode` file in a
//! directory. Exit codes encode the verdict: 0 passes every necessary
//! condition, 1 fails the test, 2 indeterminate, 3 input or usage error.
//! Timings go to standard error so standard output stays byte-stable.

mod corpus;
mod report;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use painleve_core::gauss::parse_rational;
use painleve_core::oracle::{oracle_h, oracle_r};
use painleve_core::painleve::{
    determining_polynomial, resonance_polynomial_at, DEFAULT_DEPTH_CAP, DEFAULT_PRECISION_BITS,
};
use painleve_core::{
    full_verdict, parse_equation, render_canonical, AnalysisOptions, GaussRational, PolynomialODE,
    Verdict,
};
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "painleve-probe", version, about = "Painleve test for polynomial ODEs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single equation and print its report.
    Analyze(AnalyzeArgs),
    /// Analyze every `.ode` file in a directory.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Path to an `.ode` file, or `-` for standard input.
    path: Option<PathBuf>,
    /// Equation text, e.g. "w[2]=2*w^3+z*w+1/2".
    #[arg(long, conflicts_with = "path")]
    expr: Option<String>,
    /// Base point as a rational, e.g. "1" or "-3/4" (default: probed).
    #[arg(long, allow_hyphen_values = true)]
    z0: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Bits of certified precision for numeric root localization.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    precision: u32,
    /// Laurent expansion depth cap for compatibility checks.
    #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
    depth: usize,
    /// Re-derive the determining and resonance polynomials through the
    /// series oracle and fail loudly on any mismatch.
    #[arg(long)]
    self_check: bool,
}

#[derive(Args)]
struct CorpusArgs {
    dir: PathBuf,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let informational =
                matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = err.print();
            return if informational { 0 } else { 3 };
        }
    };
    match cli.command {
        Command::Analyze(args) => run_analyze(&args),
        Command::Corpus(args) => run_corpus_command(&args),
    }
}

/// Drops `#` comment lines and joins the rest into one equation string.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|line| !line.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ")
}

fn read_input(args: &AnalyzeArgs) -> Result<String, String> {
    match (&args.path, &args.expr) {
        (None, Some(expr)) => Ok(expr.clone()),
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(strip_comments(&buf))
        }
        (Some(path), None) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Ok(strip_comments(&raw))
        }
        _ => Err("provide exactly one input: a path, `-`, or --expr".to_string()),
    }
}

fn run_analyze(args: &AnalyzeArgs) -> i32 {
    match analyze(args) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            3
        }
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<i32, String> {
    let started = Instant::now();
    let text = read_input(args)?;
    let ode = parse_equation(&text).map_err(|e| format!("parse error: {e}"))?;
    let z0 = match &args.z0 {
        Some(raw) => Some(GaussRational::from_rational(
            parse_rational(raw).ok_or_else(|| format!("invalid --z0 rational: {raw:?}"))?,
        )),
        None => None,
    };
    let options =
        AnalysisOptions { z0, precision_bits: args.precision, depth_cap: args.depth };
    let parsed_at = Instant::now();
    let analysis = full_verdict(&ode, &options).map_err(|e| format!("analysis error: {e}"))?;
    let analyzed_at = Instant::now();
    if args.self_check {
        self_check(&ode, &analysis.z0)?;
    }
    let input = render_canonical(&ode);
    let report = report::build_report(&analysis, &input, VERSION, args.precision);
    match args.format {
        Format::Text => print!("{}", report::render_text(&report)),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"))
        }
    }
    let rendered_at = Instant::now();
    eprintln!(
        "timings: parse {:.1} ms, analyze {:.1} ms, render {:.1} ms",
        (parsed_at - started).as_secs_f64() * 1e3,
        (analyzed_at - parsed_at).as_secs_f64() * 1e3,
        (rendered_at - analyzed_at).as_secs_f64() * 1e3,
    );
    Ok(match analysis.verdict {
        Verdict::PassesNecessary => 0,
        Verdict::FailsPainleve => 1,
        Verdict::Indeterminate => 2,
    })
}

/// Rebuilds the determining polynomial and two resonance-polynomial samples
/// through the independent series oracle.
fn self_check(ode: &PolynomialODE, z0: &GaussRational) -> Result<(), String> {
    let eq = ode
        .evaluate_at(z0)
        .map_err(|e| format!("self-check could not evaluate the equation: {e}"))?;
    let built = determining_polynomial(&eq).full();
    let oracle = oracle_h(&eq).map_err(|e| format!("self-check oracle failure: {e}"))?;
    if built != oracle {
        return Err("self-check failed: determining polynomial disagrees with the series oracle"
            .to_string());
    }
    for probe in [GaussRational::from_int(1), GaussRational::from_int(-2)] {
        let built = resonance_polynomial_at(&eq, &probe);
        let oracle =
            oracle_r(&eq, &probe).map_err(|e| format!("self-check oracle failure: {e}"))?;
        if built != oracle {
            return Err(format!(
                "self-check failed: resonance polynomial at q = {probe} disagrees with the series oracle"
            ));
        }
    }
    eprintln!("self-check: builders match the series oracle");
    Ok(())
}

fn run_corpus_command(args: &CorpusArgs) -> i32 {
    let jobs = args.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    });
    let started = Instant::now();
    let corpus = match corpus::run_corpus(&args.dir, jobs, VERSION) {
        Ok(c) => c,
        Err(message) => {
            eprintln!("error: {message}");
            return 3;
        }
    };
    match args.format {
        Format::Text => print!("{}", corpus::render_corpus_text(&corpus)),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&corpus).expect("corpus serializes"))
        }
    }
    eprintln!(
        "timings: corpus of {} files in {:.1} ms",
        corpus.files.len(),
        started.elapsed().as_secs_f64() * 1e3,
    );
    0
}
