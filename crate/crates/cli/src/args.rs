use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "asuper", version, about = "A-superstatistics: Fock-space identities and grand-canonical averages")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: FormatArg,

    /// Exact rational arithmetic (fugacities given as integers, decimals or a/b).
    #[arg(long, global = true)]
    pub exact: bool,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the operator identities of W(p, n).
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// all|vacuum|triple|weyl|hermiticity|quasi|hp|iop|pauli
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Dimension of W(p, n).
    Dims {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
    /// Grand partition function.
    Gpf(ThermoArgs),
    /// Partition function, particle number, occupations and energy.
    Averages(ThermoArgs),
    /// Data for one of the three occupation figures.
    Figure {
        #[arg(long)]
        id: u8,
        /// start:stop:count
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo estimates of the averages.
    Sample {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Comma-separated; a single value is used for every orbital.
        #[arg(long, allow_hyphen_values = true)]
        fugacities: String,
        /// Orbital energies, for an energy estimate.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        /// exact|metropolis
        #[arg(long, default_value = "exact")]
        method: String,
        #[arg(long, default_value_t = asuper_core::sampler::DEFAULT_BURN_IN)]
        burn_in: u64,
        #[arg(long, default_value_t = 1)]
        thinning: u64,
        /// Also write every recorded state to this CSV file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

/// Parameters shared by `gpf` and `averages`. Exactly one of the four modes
/// (fugacities, physical, degenerate, equidistant) is used.
#[derive(Debug, Args)]
pub struct ThermoArgs {
    #[arg(long)]
    pub p: u64,

    /// Comma-separated fugacities.
    #[arg(long, allow_hyphen_values = true)]
    pub fugacities: Option<String>,

    /// Temperature (physical mode).
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    /// Chemical potential(s), comma-separated; one value is shared.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Orbital energies, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,

    /// All orbitals share one fugacity.
    #[arg(long)]
    pub degenerate: bool,
    /// Equidistant levels with fugacities x q^(i-1).
    #[arg(long)]
    pub equidistant: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// x = exp(-y).
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<f64>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Lowest level (equidistant physical mode).
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon1: Option<f64>,
    /// Level spacing (equidistant physical mode).
    #[arg(long)]
    pub delta: Option<f64>,

    /// bruteforce|symfun|closed_form; direct|additive_2F1|multiplicative_2F1;
    /// qbinomial|phi21|product
    #[arg(long)]
    pub route: Option<String>,
}
