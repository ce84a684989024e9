use std::path::PathBuf;

use clap::{Args, Subcommand};
use hpdirichlet::extremals::{coeff_bound, growth_profile, GrowthMode};
use hpdirichlet::functionals::{dual_ratio_scan, phi_membership_scan, psi_beta_criteria};
use hpdirichlet::grid::{parse_integer_list, parse_real_list};
use hpdirichlet::operators::{bernstein_constant_search, operator_norm_scan, Family, ScanOptions};
use hpdirichlet::record::{
    BernsteinRecord, CoeffBoundRecord, DualRatioRecord, GrowthRecord, MembershipRecord, PartialSumRecord, PsiRecord,
    Record,
};

use crate::output::{columns_help, csv_string, Sink};
use crate::{read_polynomial, sieve, usage, CliResult};

const MAX_LIST: usize = 4096;

#[derive(Subcommand, Debug)]
pub enum ScanCommand {
    /// Pairing of the test functions with phi_beta, over their norms.
    DualRatio(DualRatioArgs),
    /// Normalized growth of the multiplicative coefficient constant.
    Growth(GrowthArgs),
    /// Best truncation ratio per cutoff for a polynomial family.
    PartialSum(PartialSumArgs),
    /// Majorant trend of phi_beta in H^p over a (p, beta) grid.
    Membership(MembershipArgs),
    /// Empirical constant of the truncated Bernstein inequality.
    Bernstein(BernsteinArgs),
    /// Disc surrogate for psi_beta over a (p, beta) grid.
    Psi(PsiArgs),
    /// Two-sided bounds for C(k, p).
    Coeff(CoeffArgs),
}

#[derive(Args, Debug)]
pub struct Out {
    /// CSV destination (stdout when absent).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DualRatioArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    beta: f64,
    /// Increasing cutoffs, e.g. `100,1000,10000`.
    #[arg(long = "N")]
    n: String,
    #[command(flatten)]
    out: Out,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    #[arg(long)]
    p: f64,
    /// square_free_primorials or all.
    #[arg(long, default_value = "square_free_primorials")]
    mode: String,
    /// Number of rows.
    #[arg(long)]
    kmax: usize,
    #[arg(long, default_value_t = 4)]
    max_exponent: u32,
    #[command(flatten)]
    out: Out,
}

#[derive(Args, Debug)]
pub struct PartialSumArgs {
    #[arg(long)]
    p: f64,
    /// extremal_fM, shifted_gN, random or user.
    #[arg(long)]
    family: String,
    /// For extremal_fM: use the first `kmax` primorials as cutoffs.
    #[arg(long, conflicts_with = "n")]
    kmax: Option<usize>,
    #[arg(long = "N")]
    n: Option<String>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Local truncation degree for the extremal constructions.
    #[arg(long)]
    degree: Option<usize>,
    /// Polynomial files for the `user` family.
    #[arg(long)]
    input: Vec<PathBuf>,
    #[command(flatten)]
    out: Out,
}

#[derive(Args, Debug)]
pub struct MembershipArgs {
    #[arg(long)]
    p: String,
    #[arg(long)]
    beta: String,
    #[arg(long, default_value_t = 1 << 22)]
    n_max: u64,
    #[command(flatten)]
    out: Out,
}

#[derive(Args, Debug)]
pub struct BernsteinArgs {
    /// Degrees.
    #[arg(long)]
    n: String,
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Out,
}

#[derive(Args, Debug)]
pub struct PsiArgs {
    #[arg(long)]
    p: String,
    #[arg(long)]
    beta: String,
    #[arg(long, default_value_t = 16)]
    log2_max: u32,
    #[command(flatten)]
    out: Out,
}

#[derive(Args, Debug)]
pub struct CoeffArgs {
    #[arg(long)]
    p: String,
    #[arg(long)]
    kmax: u32,
    #[command(flatten)]
    out: Out,
}

/// Appends the column list of every scan to its `--help`.
pub fn document_columns(cmd: clap::Command) -> clap::Command {
    let docs: [(&str, String); 7] = [
        ("dual-ratio", columns_help::<DualRatioRecord>()),
        ("growth", columns_help::<GrowthRecord>()),
        ("partial-sum", columns_help::<PartialSumRecord>()),
        ("membership", columns_help::<MembershipRecord>()),
        ("bernstein", columns_help::<BernsteinRecord>()),
        ("psi", columns_help::<PsiRecord>()),
        ("coeff", columns_help::<CoeffBoundRecord>()),
    ];
    docs.into_iter().fold(cmd, |c, (name, help)| c.mut_subcommand(name, |s| s.after_help(help)))
}

fn emit<T: Record>(rows: &[T], out: &Out) -> CliResult<()> {
    Sink::new(out.output.as_ref()).write(&csv_string(rows)?)
}

pub fn run(cmd: &ScanCommand) -> CliResult<()> {
    match cmd {
        ScanCommand::DualRatio(a) => {
            let ns = parse_integer_list(&a.n, MAX_LIST)?;
            let scan = dual_ratio_scan(a.p, a.beta, &ns, &sieve()?)?;
            emit(&DualRatioRecord::rows(&scan), &a.out)
        }
        ScanCommand::Growth(a) => {
            let mode: GrowthMode = a.mode.parse()?;
            let rows = growth_profile(a.p, a.kmax, mode, a.max_exponent, &sieve()?)?;
            let records: Vec<GrowthRecord> = rows.iter().map(|r| GrowthRecord::new(a.p, mode, r)).collect();
            emit(&records, &a.out)
        }
        ScanCommand::PartialSum(a) => {
            let family: Family = a.family.parse()?;
            let table = sieve()?;
            let ns = match (&a.n, a.kmax) {
                (Some(list), None) => parse_integer_list(list, MAX_LIST)?,
                (None, Some(k)) if family == Family::ExtremalFm => {
                    let ns = table.primorials(k);
                    if ns.len() < k {
                        return Err(usage("primorials exceed the sieve"));
                    }
                    ns
                }
                (None, Some(_)) => return Err(usage("--kmax applies to extremal_fM; give --N for other families")),
                _ => return Err(usage("give --N or --kmax")),
            };
            let users = a.input.iter().map(read_polynomial).collect::<CliResult<Vec<_>>>()?;
            let opts = ScanOptions { trials: a.trials, seed: a.seed, degree: a.degree, users };
            let rows = operator_norm_scan(a.p, &ns, family, &opts, &table)?;
            emit(&rows.iter().map(PartialSumRecord::from).collect::<Vec<_>>(), &a.out)
        }
        ScanCommand::Membership(a) => {
            let ps = parse_real_list(&a.p)?;
            let betas = parse_real_list(&a.beta)?;
            let table = sieve()?;
            if a.n_max > table.limit() {
                return Err(usage(format!("--n-max {} exceeds the sieve limit {}", a.n_max, table.limit())));
            }
            let rows = phi_membership_scan(&ps, &betas, a.n_max, &table)?;
            emit(&rows.iter().map(MembershipRecord::from).collect::<Vec<_>>(), &a.out)
        }
        ScanCommand::Bernstein(a) => {
            let ns: Vec<usize> = parse_integer_list(&a.n, MAX_LIST)?.into_iter().map(|n| n as usize).collect();
            let ps = parse_real_list(&a.p)?;
            let rows = bernstein_constant_search(&ns, &ps, a.samples, a.seed)?;
            emit(&rows.iter().map(BernsteinRecord::from).collect::<Vec<_>>(), &a.out)
        }
        ScanCommand::Psi(a) => {
            let ps = parse_real_list(&a.p)?;
            let betas = parse_real_list(&a.beta)?;
            let mut rows = Vec::new();
            for &p in &ps {
                for &b in &betas {
                    rows.push(PsiRecord::from(&psi_beta_criteria(p, b, a.log2_max)?));
                }
            }
            emit(&rows, &a.out)
        }
        ScanCommand::Coeff(a) => {
            let ps = parse_real_list(&a.p)?;
            let mut rows = Vec::new();
            for &p in &ps {
                for k in 1..=a.kmax {
                    rows.push(CoeffBoundRecord::from(&coeff_bound(k, p)?));
                }
            }
            emit(&rows, &a.out)
        }
    }
}
