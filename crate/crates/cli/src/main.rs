mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use detlab_core::casebook::RunConfig;
use detlab_core::polyring::DEFAULT_PRIME;

#[derive(Parser, Debug)]
#[command(name = "detlab", version, about = "Determinantal and Hankel-type polynomial workbench")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "DETLAB_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Prime for modular identity tests.
    #[arg(long, global = true, env = "DETLAB_PRIME", default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    /// Wall-clock budget per computation.
    #[arg(long, global = true, env = "DETLAB_TIMEOUT_SECS", default_value_t = 600)]
    pub timeout_secs: u64,
    /// Wall-clock budget per computation for facts that need --long.
    #[arg(long, global = true, env = "DETLAB_LONG_TIMEOUT_SECS", default_value_t = 7200)]
    pub long_timeout_secs: u64,
    /// Cap on Buchberger steps per Groebner basis.
    #[arg(long, global = true, env = "DETLAB_GB_STEP_CAP")]
    pub gb_step_cap: Option<u64>,
    /// Directory for cached Groebner bases.
    #[arg(long, global = true, env = "DETLAB_CACHE_DIR")]
    pub cache_dir: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Leave timings out of reports so that identical runs print identical bytes.
    #[arg(long, global = true)]
    pub no_timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct MatrixArgs {
    /// Matrix family: generic, symmetric, catalecticant, hankel, gp-associated, sub-hankel, degenerate-generic, sc3.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Matrix spec file (`key = value` lines).
    #[arg(long, conflicts_with = "kind")]
    pub spec: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a structured matrix; print it, its determinant or minors.
    Matrix {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        det: bool,
        /// Print the t-minors.
        #[arg(long)]
        minors: Option<usize>,
        #[arg(long)]
        adjugate: bool,
    },
    /// Groebner basis, Hilbert data and membership for an ideal of x-polynomials.
    Ideal {
        /// Generators, e.g. --gen "x0*x2 - x1^2" (repeatable).
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Number of variables (default: largest index used + 1).
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        gb: bool,
        #[arg(long)]
        hilbert: bool,
        #[arg(long)]
        contains: Vec<String>,
        #[arg(long)]
        radical_contains: Vec<String>,
        /// Saturate by the irrelevant ideal.
        #[arg(long)]
        saturate: bool,
    },
    /// Syzygies of forms, or of the partials of a matrix determinant.
    Syz {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long)]
        linear: bool,
        #[arg(long)]
        betti: bool,
        #[arg(long)]
        fitting: bool,
        /// Homological degree cap for Betti numbers.
        #[arg(long, default_value_t = 4)]
        hom_cap: usize,
    },
    /// Polar map of a determinant or of a form.
    Polar {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// A form instead of a matrix determinant.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        verdict: bool,
        #[arg(long)]
        hessian: bool,
        #[arg(long)]
        multiplicity: bool,
        #[arg(long)]
        totally_hessian: bool,
        #[arg(long)]
        linear_type: bool,
    },
    /// Bracket and Pluecker checks for Hankel determinants.
    Hankel {
        #[arg(long)]
        m: usize,
        /// Bracket expansion of the j-th partial.
        #[arg(long)]
        star: Option<usize>,
        #[arg(long)]
        golberg: bool,
        #[arg(long)]
        plucker: bool,
        #[arg(long)]
        integrality: bool,
        /// Compare J P^i : P^(i+1) with the expected minors ideal.
        #[arg(long)]
        reduction: Option<usize>,
    },
    /// Filtration and homological checks for sub-Hankel determinants.
    Subhankel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        recurrences: bool,
        #[arg(long)]
        hilbert_burch: bool,
        #[arg(long)]
        multiplicities: bool,
        #[arg(long)]
        colon: bool,
        #[arg(long)]
        resolution: bool,
        #[arg(long)]
        linear_type: bool,
    },
    /// Registry of worked scenarios.
    Casebook {
        #[command(subcommand)]
        action: CasebookAction,
    },
    /// Groebner basis cache maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CasebookAction {
    /// List scenarios and their facts.
    List,
    /// Run one scenario, or all of them in parallel.
    Run {
        #[arg(long, required_unless_present = "all")]
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// Run the expensive facts too.
        #[arg(long, env = "DETLAB_LONG")]
        long: bool,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    Stats,
    Clear,
}

/// How a command ended, mapped to the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Ok = 0,
    Contradiction = 1,
    Usage = 2,
    Timeout = 3,
}

impl Global {
    pub fn run_config(&self, long: bool) -> RunConfig {
        RunConfig {
            seed: self.seed,
            prime: self.prime,
            timeout_secs: self.timeout_secs,
            long_timeout_secs: self.long_timeout_secs,
            gb_step_cap: self.gb_step_cap,
            cache_dir: self.cache_dir.clone(),
            long,
            timings: !self.no_timings,
        }
    }
}

fn print(out: Output, v: &Value) {
    let text = match out {
        Output::Json => serde_json::to_string_pretty(v).unwrap(),
        Output::Text => {
            let mut lines = Vec::new();
            commands::text_lines("", v, &mut lines);
            lines.join("\n")
        }
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, value) = match commands::dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_timeout() { Outcome::Timeout } else { Outcome::Usage };
            return ExitCode::from(code as u8);
        }
    };
    if let Some(v) = value {
        print(cli.global.output, &v);
    }
    ExitCode::from(outcome as u8)
}
