//! `hpd`: norms, verification suites, scans and builders for Hardy spaces of
//! Dirichlet series.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 usage or input
//! error.

mod build;
mod output;
mod scan;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use hpdirichlet::arithmetic::DEFAULT_SIEVE_LIMIT;
use hpdirichlet::norms::{
    norm_bergman, norm_dirichlet, norm_even, norm_l2, norm_qmc, norm_vertical, BergmanSpec, QuadratureSpec,
    AUTO_LATTICE_POINTS,
};
use hpdirichlet::record::NormRecord;
use hpdirichlet::series::{bohr_lift, parse_polynomial_json, parse_polynomial_text};
use hpdirichlet::verify::{self, Scale, Suite, VerifyOptions};
use hpdirichlet::{DirichletPolynomial, FactorizationTable};

use output::{Format, Sink};

#[derive(Parser, Debug)]
#[command(name = "hpd", version, about = "Hardy spaces of Dirichlet series")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quasi-norm of a polynomial read from a file.
    Norm(NormArgs),
    /// Run an invariant suite and print a JSON report.
    Verify(VerifyArgs),
    /// Parameter scans written as CSV.
    Scan {
        #[command(subcommand)]
        scan: scan::ScanCommand,
    },
    /// Construct polynomials and write them in the text or JSON format.
    Build {
        #[command(subcommand)]
        what: build::BuildCommand,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum MethodArg {
    Auto,
    ExactL2,
    ExactEven,
    Qmc,
    VerticalLine,
    BergmanQuadrature,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Lattice,
    Tensor,
}

#[derive(Args, Debug)]
struct NormArgs {
    /// Polynomial file: `n re im` lines, or JSON when the name ends in `.json`.
    input: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Quadrature scheme for `qmc`.
    #[arg(long, value_enum, default_value = "lattice")]
    scheme: SchemeArg,
    /// Lattice points per replication, or tensor points per variable.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value_t = 16)]
    replications: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Half-length of the vertical segment.
    #[arg(long, default_value_t = 1e4)]
    t_max: f64,
    /// Trapezoid step on the vertical line.
    #[arg(long)]
    step: Option<f64>,
    /// Weight exponent of the area norm.
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// arithmetic, norms, hl-inequalities, weissler, coeff, partial-sum,
    /// functionals or all.
    suite: String,
    #[arg(long, default_value = "smoke")]
    scale: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random polynomials per inequality check.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

pub enum Failure {
    Usage(String),
    Assertion(String),
}

impl From<hpdirichlet::Error> for Failure {
    fn from(e: hpdirichlet::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("csv error: {e}"))
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn sieve() -> CliResult<FactorizationTable> {
    let limit = match std::env::var("HD_SIEVE_LIMIT") {
        Ok(v) => v.trim().parse::<u64>().map_err(|_| usage(format!("HD_SIEVE_LIMIT `{v}` is not an integer")))?,
        Err(_) => DEFAULT_SIEVE_LIMIT,
    };
    Ok(FactorizationTable::new(limit)?)
}

pub fn read_polynomial(path: &PathBuf) -> CliResult<DirichletPolynomial> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        parse_polynomial_json(&text)
    } else {
        parse_polynomial_text(&text)
    };
    parsed.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_norm(a: &NormArgs) -> CliResult<()> {
    let f = read_polynomial(&a.input)?;
    let estimate = match a.method {
        MethodArg::Auto => norm_dirichlet(&f, a.p, &sieve()?, a.seed)?,
        MethodArg::ExactL2 => {
            if a.p != 2.0 {
                return Err(usage("exact_l2 needs --p 2"));
            }
            norm_l2(&f)
        }
        MethodArg::ExactEven => norm_even(&f, a.p)?,
        MethodArg::Qmc => {
            let lifted = bohr_lift(&f, &sieve()?)?;
            let spec = match a.scheme {
                SchemeArg::Lattice => QuadratureSpec::lattice(a.points.unwrap_or(AUTO_LATTICE_POINTS), a.replications, a.seed),
                SchemeArg::Tensor => match a.points {
                    Some(n) => QuadratureSpec::tensor_grid_with(n),
                    None => QuadratureSpec::tensor_grid(),
                },
            };
            norm_qmc(&lifted, a.p, &spec)?
        }
        MethodArg::VerticalLine => norm_vertical(&f, a.p, a.t_max, a.step)?,
        MethodArg::BergmanQuadrature => {
            if a.p != 2.0 {
                return Err(usage("bergman_quadrature needs --p 2"));
            }
            norm_bergman(&f, a.alpha, &BergmanSpec::default())?
        }
    };
    let rows = [NormRecord::from(&estimate)];
    let text = match a.format {
        Format::Csv => output::csv_string(&rows)?,
        Format::Json => output::json_string(&rows[0]),
    };
    print!("{text}");
    if let Some(path) = &a.output {
        std::fs::write(path, &text)?;
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<()> {
    let suites = Suite::parse_selection(&a.suite)?;
    let scale: Scale = a.scale.parse()?;
    let opts = VerifyOptions { scale, seed: a.seed, trials: a.trials };
    let table = sieve()?;
    let report = verify::run(&suites, &opts, &table)?;
    for s in &report.suites {
        for c in &s.checks {
            eprintln!("{} {}::{}", if c.passed { "PASS" } else { "FAIL" }, s.suite, c.name);
        }
    }
    let json = report.to_json() + "\n";
    Sink::new(a.output.as_ref()).write(&json)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("suite `{}` failed", a.suite)))
    }
}

fn command() -> clap::Command {
    let mut cmd = Cli::command();
    cmd = cmd.mut_subcommand("scan", scan::document_columns);
    cmd
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Norm(a) => cmd_norm(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Scan { scan } => scan::run(&scan),
        Command::Build { what } => build::run(&what),
    }
}

fn main() -> ExitCode {
    let matches = command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(msg)) => {
            eprintln!("hpd: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("hpd: {msg}");
            ExitCode::from(2)
        }
    }
}
