use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use hpdirichlet::extremals::{extremal_c1, C1Variant};
use hpdirichlet::functionals::{dual_test_function, PhiBetaTruncation};
use hpdirichlet::operators::{extremal_fm, shifted_gn};
use hpdirichlet::series::{euler_product_power, LocalFactor};
use hpdirichlet::DirichletPolynomial;
use num_complex::Complex64;

use crate::output::Sink;
use crate::{sieve, usage, CliResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolyFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Dest {
    #[arg(long, value_enum, default_value = "text")]
    format: PolyFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    A,
    B,
    C,
}

#[derive(Subcommand, Debug)]
pub enum BuildCommand {
    /// prod_{q <= N} (1 + c q^{-shift} q^{-s})^exponent, each local factor cut at `degree`.
    Euler {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        exponent: f64,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        coefficient: f64,
        #[arg(long, default_value_t = 0.0)]
        shift: f64,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        dest: Dest,
    },
    /// First-coefficient extremal in the variable q^{-s}.
    Extremal {
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Family parameter of variant b.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        #[command(flatten)]
        dest: Dest,
    },
    /// Product of first-coefficient extremals over the first k primes.
    Fm {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        dest: Dest,
    },
    /// Shifted extremal whose truncation at N reproduces a primorial truncation.
    Gn {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        dest: Dest,
    },
    /// Coefficients of phi_beta up to N.
    Phi {
        #[arg(long)]
        beta: f64,
        #[arg(long = "N")]
        n: u64,
        #[command(flatten)]
        dest: Dest,
    },
    /// Test function prod_{q <= N} (1 - q^{-1/2-s})^{-2/p}, local degree `degree`.
    DualTest {
        #[arg(long)]
        p: f64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        dest: Dest,
    },
}

fn write(f: &DirichletPolynomial, dest: &Dest) -> CliResult<()> {
    let text = match dest.format {
        PolyFormat::Text => f.to_text(),
        PolyFormat::Json => f.to_json() + "\n",
    };
    Sink::new(dest.output.as_ref()).write(&text)
}

pub fn run(cmd: &BuildCommand) -> CliResult<()> {
    match cmd {
        BuildCommand::Euler { n, exponent, coefficient, shift, degree, dest } => {
            let table = sieve()?;
            if *n > table.limit() {
                return Err(usage(format!("N = {n} exceeds the sieve limit")));
            }
            let factors: Vec<LocalFactor> = table
                .primes()
                .iter()
                .take_while(|&&q| q <= *n)
                .map(|&q| LocalFactor {
                    prime: q,
                    series: vec![Complex64::new(1.0, 0.0), Complex64::new(coefficient * (q as f64).powf(-shift), 0.0)],
                })
                .collect();
            write(&euler_product_power(&factors, *exponent, Some(*degree))?, dest)
        }
        BuildCommand::Extremal { p, variant, a, degree, prime, dest } => {
            let v = match variant {
                VariantArg::A => C1Variant::A,
                VariantArg::B => C1Variant::B(*a),
                VariantArg::C => C1Variant::C,
            };
            if !sieve()?.is_prime(*prime) {
                return Err(usage(format!("{prime} is not a prime")));
            }
            write(&extremal_c1(*p, v, *degree)?.polynomial.to_dirichlet(*prime)?, dest)
        }
        BuildCommand::Fm { k, p, degree, dest } => write(&extremal_fm(*k, *p, *degree, &sieve()?)?, dest),
        BuildCommand::Gn { n, p, degree, dest } => write(&shifted_gn(*n, *p, *degree, &sieve()?, 0)?.polynomial, dest),
        BuildCommand::Phi { beta, n, dest } => write(&PhiBetaTruncation::new(*beta, *n)?.to_dirichlet(), dest),
        BuildCommand::DualTest { p, n, degree, dest } => write(&dual_test_function(*p, *n, *degree, &sieve()?)?, dest),
    }
}
