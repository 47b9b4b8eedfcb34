mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{emit_error, Failure};

/// Higher Heegner cycle toolkit.
#[derive(Parser, Debug)]
#[command(name = "hhc", version, about)]
pub struct Cli {
    /// Working precision in bits for high-precision numerics (at least 128).
    #[arg(long, global = true, env = "HHC_PRECISION", default_value_t = 192)]
    pub precision: u32,

    /// Relative tolerance for numerical agreement checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tolerance: f64,

    /// Deliberately corrupts a computation to exercise failure detection.
    #[arg(long, global = true, hide = true)]
    pub inject_fault: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the Weil representation relations exactly.
    WeilCheck {
        /// Level N.
        #[arg(long, visible_alias = "N")]
        level: u64,
        /// Check every level from 1 to N.
        #[arg(long)]
        through: bool,
    },
    /// List Heegner points of discriminant −4Nm in class μ as TSV.
    HeegnerEnum {
        #[arg(long = "N")]
        level: u64,
        #[arg(long)]
        m: String,
        #[arg(long)]
        mu: usize,
        /// Enumerate a raw box of forms and reduce to orbits by brute force.
        #[arg(long)]
        raw_box: bool,
        /// Bound on A/N for the raw box (default: large enough for all classes).
        #[arg(long, requires = "raw_box")]
        box_bound: Option<i64>,
    },
    /// Finite intersection, both constant terms and the global coefficient.
    Intersect {
        #[command(flatten)]
        cm: CmArgs,
        #[arg(long)]
        m1: String,
        #[arg(long)]
        mu1: usize,
        #[command(flatten)]
        provider: ProviderArgs,
    },
    /// Compare the direct and closed constant terms on seeded tables.
    CtCheck {
        /// Number of synthetic tables per configuration.
        #[arg(long, default_value_t = 20)]
        random_seeds: u64,
        /// Weights κ to test, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
        kappas: Vec<u32>,
    },
    /// Shimura lift of a vector-valued cusp form.
    Lift {
        /// Form file (vvform v1).
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long)]
        kappa: u32,
        #[arg(long)]
        m0: String,
        #[arg(long)]
        mu0: usize,
        #[arg(long = "D0", allow_hyphen_values = true)]
        d0: i64,
        /// Coefficients a_n are produced for n < bound.
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// Central value and derivative of the L-function of a cusp form.
    Lderiv {
        /// Coefficient file (`level N weight k` header, then `n a_n`).
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long)]
        weight: u32,
        #[arg(long = "level", visible_alias = "N")]
        level: u64,
        /// Second smoothing cutoff (the first is 1).
        #[arg(long, default_value_t = 1.3)]
        cutoff: f64,
    },
    /// Constant term of ⟨f, g⟩ for forms in dual representations.
    Pair {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Coefficients of Φ^(κ) from the holomorphic part of f.
    PhiExpand {
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long)]
        kappa: u32,
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// End-to-end height assembly for f with the given principal part.
    Pipeline {
        #[command(flatten)]
        cm: CmArgs,
        /// Entries "m=<rat>,mu=<int>,c=<rat>" separated by ';', each
        /// standing for c·f_{m,μ} with principal part q^{−m}(e_μ ± e_{−μ}).
        #[arg(long)]
        f_pp: String,
        /// f is weakly holomorphic, so ξf = 0.
        #[arg(long)]
        weakly_holomorphic: bool,
        /// Coefficients of the lifted form, to evaluate L′ numerically.
        #[arg(long)]
        lseries: Option<PathBuf>,
        #[command(flatten)]
        provider: ProviderArgs,
    },
    /// Run the built-in invariant suites.
    Selftest {
        /// Smaller parameter ranges.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CmArgs {
    #[arg(long = "N")]
    pub level: u64,
    #[arg(long)]
    pub kappa: u32,
    #[arg(long = "D0", allow_hyphen_values = true)]
    pub d0: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub r0: i64,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ProviderArgs {
    /// κ table file.
    #[arg(long)]
    pub kappa_table: Option<PathBuf>,
    /// Seed for a synthetic κ table.
    #[arg(long)]
    pub kappa_synthetic: Option<u64>,
    /// Use κ = 0.
    #[arg(long)]
    pub kappa_zero: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = commands::command_name(&cli.command);
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            emit_error(name, &f);
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if cli.precision < 128 {
        return Err(Failure::Config(format!("precision {} is below the minimum of 128 bits", cli.precision)));
    }
    let floor = 2f64.powf(-(cli.precision as f64) / 2.0);
    if !(cli.tolerance >= floor) {
        return Err(Failure::Config(format!("tolerance {} is below 2^(-precision/2) = {floor:e}", cli.tolerance)));
    }
    if let Some(f) = &cli.inject_fault {
        if f != "weil-s-sign" {
            return Err(Failure::Config(format!("unknown fault '{f}'")));
        }
    }
    hhc::scalars::with_precision(cli.precision, || commands::dispatch(cli))
}
