use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "orbitcalc", version, about = "Nilpotent orbits of classical Lie algebras")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the nilpotent orbits of an algebra.
    Orbits { algebra: String },

    /// Closure poset with classified cover edges.
    Poset {
        algebra: String,
        /// Emit Graphviz instead of text.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },

    /// Weighted Dynkin diagram and Jacobson-Morozov flag type.
    Dynkin { algebra: String, partition: String },

    /// Kraft-Procesi reduction of a degeneration D > F.
    Degeneration { algebra: String, upper: String, lower: String },

    /// Q-factorial terminalizations of an orbit closure.
    Terminalize {
        algebra: String,
        partition: String,
        /// List every chain rather than one.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::First)]
        strategy: StrategyArg,
    },

    /// Graph of terminalizations joined by Mukai flops.
    Flops {
        algebra: String,
        partition: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },

    /// Run the brute-force oracle suites.
    Check {
        /// A, B, C, D or all.
        family: String,
        /// Largest natural dimension to sweep.
        #[arg(long)]
        max_m: usize,
        /// Restrict to these suites.
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<SuiteArg>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    First,
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum SuiteArg {
    Poset,
    Codim,
    Rigidity,
    RoundTrip,
    Connectivity,
    Collapse,
    Counting,
}
