//! `morozov`: command-line front end for the normaliser tower toolkit.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 undetermined within the
//! budget, 3 input error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "morozov", version, about = "Normaliser towers, radicals and parabolics over GF(p)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "MOROZOV_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Element budget for enumeration-based steps.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Norm bound B for the cocharacter search (||λ||² ≤ B²).
    #[arg(long, global = true)]
    pub bound: Option<i64>,
    /// Maximum number of tower steps.
    #[arg(long, global = true)]
    pub max_steps: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build classical Lie algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Run the normaliser tower.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Optimal cocharacter search.
    #[command(subcommand)]
    Kempf(KempfCmd),
    /// Parabolicity checks.
    #[command(subcommand)]
    Parabolic(ParabolicCmd),
    /// Solvable radical, nilradical and p-radical.
    #[command(subcommand)]
    Radical(RadicalCmd),
    /// Classify a prime against a root system.
    #[command(subcommand)]
    Prime(PrimeCmd),
    /// Slope checks on filtration data.
    #[command(subcommand)]
    Hn(HnCmd),
    /// Write the built-in input files.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
    /// The acceptance battery.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraSpec {
    /// gl, sl, pgl, sp or so.
    #[arg(long)]
    pub family: Option<String>,
    /// Matrix size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct SubspaceArgs {
    #[command(flatten)]
    pub algebra: AlgebraSpec,
    /// Subspace file (labels, vectors or matrices).
    #[arg(long)]
    pub subspace: std::path::PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    Build {
        #[command(flatten)]
        algebra: AlgebraSpec,
    },
}

#[derive(Subcommand, Debug)]
pub enum TowerCmd {
    Run {
        #[command(flatten)]
        input: SubspaceArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum KempfCmd {
    Optimize {
        #[command(flatten)]
        input: SubspaceArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ParabolicCmd {
    Detect {
        #[command(flatten)]
        input: SubspaceArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum RadicalCmd {
    Compute {
        #[command(flatten)]
        input: SubspaceArgs,
        /// auto, structured or enumeration.
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum PrimeCmd {
    Classify {
        /// Cartan type such as A2, E8 or G_2.
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum HnCmd {
    Check {
        /// JSON file `{"factors": [[rank, deg], ...], "zero_index": k}`.
        #[arg(long)]
        filtration: std::path::PathBuf,
        /// Characteristic for the tensor-slope condition.
        #[arg(long)]
        p: Option<u64>,
        /// Dimension of the algebra; defaults to the total rank.
        #[arg(long)]
        dim: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixturesCmd {
    /// Write the pgl3 counterexample inputs and the sl3 seed example.
    Paper {
        #[arg(long)]
        out: std::path::PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum SuiteCmd {
    Run {
        /// Run only these criteria (1 to 10).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = commands::dispatch(&cli);
    print!("{}", out.text);
    ExitCode::from(out.code)
}
