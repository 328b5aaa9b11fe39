use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use binform::harness::{
    compute, run_suite_streaming, scan_conjecture, CampaignConfig, ComputeFamily, ComputeRequest, ConjecturePart,
    ReportFormat, ReportWriter, Suite, DEFAULT_SCAN_P_MAX,
};
use binform::Error;

#[derive(Parser)]
#[command(name = "binform", version, about = "Determinants built from the binary form i^2 + cij + dj^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one determinant and any closed form that applies
    Compute(ComputeArgs),
    /// Run a verification suite and write a report
    Verify(VerifyArgs),
    /// Scan open conjectures over a range of primes
    Scan {
        #[command(subcommand)]
        target: ScanTarget,
    },
}

#[derive(Args)]
struct ComputeArgs {
    /// bracket, paren, brace, dp, dp-inner, power-full, power-inner, power-zero, shifted, rational
    #[arg(long)]
    family: String,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    e: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<i64>,
    /// Comma-separated coefficients a_0,a_1,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<i64>>,
}

#[derive(Args)]
struct VerifyArgs {
    /// thm-divisibility, lemma-nonsquarefree, thm-shift, cor-x-independence,
    /// thm-rational, cor-dp11, prior-facts, power-sums, engines
    suite: String,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    p_min: Option<u64>,
    #[arg(long)]
    p_max: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    c_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    c_max: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    d_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    d_max: Option<i64>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    /// Report path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Subcommand)]
enum ScanTarget {
    Conjecture {
        #[arg(long)]
        part: String,
        #[arg(long, default_value_t = DEFAULT_SCAN_P_MAX)]
        p_max: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn run_compute(args: ComputeArgs) -> Result<bool, Error> {
    let req = ComputeRequest {
        family: args.family.parse::<ComputeFamily>()?,
        c: args.c,
        d: args.d,
        n: args.n,
        p: args.p,
        e: args.e,
        x: args.x,
        coeffs: args.coeffs,
    };
    let out = compute(&req)?;
    println!("{}", out.value);
    for note in &out.notes {
        println!("  {note}");
    }
    Ok(out.prediction_holds != Some(false))
}

fn run_verify(args: VerifyArgs) -> Result<bool, Error> {
    let format = args.format.parse::<ReportFormat>()?;
    let config = CampaignConfig {
        suite: args.suite.parse::<Suite>()?,
        n_min: args.n_min,
        n_max: args.n_max,
        p_min: args.p_min,
        p_max: args.p_max,
        c_min: args.c_min,
        c_max: args.c_max,
        d_min: args.d_min,
        d_max: args.d_max,
        trials: args.trials,
        seed: args.seed,
        threads: args.threads.unwrap_or_else(default_threads),
    };
    let grid = config.resolve()?;
    let mut writer = match &args.out {
        Some(path) => ReportWriter::create(path, format)?,
        None => ReportWriter::new(Box::new(std::io::stdout()), format)?,
    };
    let tally = run_suite_streaming(&config, |r| writer.write(r))?;
    writer.finish()?;
    if let Some(path) = &args.out {
        binform::harness::write_report_meta(path, &grid, &tally)?;
    }
    eprintln!(
        "{}: {} checks, {} pass, {} fail, {} skip",
        config.suite,
        tally.total(),
        tally.pass,
        tally.fail,
        tally.skip
    );
    Ok(tally.fail == 0)
}

fn run_scan(target: ScanTarget) -> Result<bool, Error> {
    let ScanTarget::Conjecture { part, p_max, out, threads } = target;
    let part = part.parse::<ConjecturePart>()?;
    let summary = scan_conjecture(part, p_max, &out, threads.unwrap_or_else(default_threads))?;
    eprintln!(
        "conjecture ({}) up to p = {}: {} checked, {} divisible",
        summary.part, summary.p_max, summary.checked, summary.divisible
    );
    if !summary.counterexamples.is_empty() {
        println!("counterexamples: {:?}", summary.counterexamples);
    }
    Ok(summary.counterexamples.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Verify(args) => run_verify(args),
        Command::Scan { target } => run_scan(target),
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("binform: {e}");
            ExitCode::from(2)
        }
    }
}
