use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "jetloci", version, about = "Compactly supported cohomology of contact loci from log resolution data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// Exactly one of a polynomial or a configuration file.
#[derive(Clone, Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Polynomial in one or two variables, e.g. "x^2+y^3"
    #[arg(long)]
    pub poly: Option<String>,
    /// Configuration JSON file
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct Contact {
    /// Contact order
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
}

#[derive(Clone, Debug, Args)]
pub struct WeightArgs {
    /// Weight override, inline ("1=4,2=6") or a JSON file holding a map
    #[arg(long)]
    pub weights: Option<String>,
    /// Multiply the weights by this factor
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub scale: u64,
}

#[derive(Clone, Debug, Args)]
pub struct PrimeArgs {
    /// Comma-separated prime field orders
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Keep only primes congruent to 1 modulo this number
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub congruence: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a configuration against the structural rules
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Embedded resolution of a plane curve germ at the origin
    Resolve {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        output: Output,
    },
    /// Subdivide until the configuration is m-separating
    Separate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        contact: Contact,
        #[command(flatten)]
        output: Output,
    },
    /// Solve for (or validate supplied) ample weights
    Weights {
        #[command(flatten)]
        source: Source,
        /// Work on the m-separated configuration
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: Option<u64>,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        output: Output,
    },
    /// First page of the spectral sequence
    E1 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        contact: Contact,
        #[command(flatten)]
        weights: WeightArgs,
        /// Report what scaling the weights would force (conditional)
        #[arg(long)]
        gap_analysis: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Degeneration analysis: exact groups or rank bounds per degree
    Hc {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        contact: Contact,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        output: Output,
    },
    /// First page in the Floer grading
    Mclean {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        contact: Contact,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Monodromy zeta function
    Zeta {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Lefschetz numbers of monodromy iterates
    Lefschetz {
        #[command(flatten)]
        source: Source,
        /// A single iterate; otherwise 1..=max-m
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: Option<u64>,
        #[arg(long, default_value_t = 12)]
        max_m: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the Euler characteristic of the page with the Lefschetz number
    CheckEuler {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        contact: Contact,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Count contact jets over prime fields
    OracleCount {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        contact: Contact,
        /// Jet level (defaults to m)
        #[arg(long)]
        level: Option<u64>,
        #[command(flatten)]
        primes: PrimeArgs,
        /// Write (q, N) pairs to this CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Euler characteristic by interpolating jet counts in q
    OracleChi {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        contact: Contact,
        /// Expected degree of the count (defaults to the stratum dimension)
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        primes: PrimeArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Fiber sizes of the chart map on jets with prescribed order
    VerifyFibration {
        #[arg(long)]
        m: u64,
        /// Jet level (defaults to m)
        #[arg(long)]
        level: Option<u64>,
        #[arg(long, default_value_t = 2)]
        d: u64,
        #[arg(long, default_value_t = 2)]
        nu: u64,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Full pipeline with every cross-check
    Report {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        contact: Contact,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        output: Output,
    },
}
