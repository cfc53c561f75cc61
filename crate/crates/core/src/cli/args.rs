use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::exact::Route;

pub const DEFAULT_PRECISION: u32 = 50;
pub const DEFAULT_TERMS: u64 = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "dottie",
    version,
    about = "Arbitrary-precision routes to the fixed point of cos x = x",
    after_help = "Environment: DOTTIE_GUARD_DIGITS overrides the number of guard digits (default 15)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Method or approximant identifier
    #[arg(long, global = true)]
    pub method: Option<String>,
    /// Output precision in significant decimal digits
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Number of terms or iterations
    #[arg(long, global = true)]
    pub terms: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the fixed point by one method
    Compute,
    /// Emit the exact odd-power coefficient table
    Coeffs {
        /// Largest odd index
        #[arg(long, default_value_t = 15)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = RouteArg::Reversion)]
        route: RouteArg,
    },
    /// Cross-check every route against the Newton oracle
    Verify {
        #[arg(value_enum)]
        target: Option<VerifyTarget>,
        /// Corrupt one exact coefficient before checking
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Error against the oracle as a function of the number of terms
    Convergence,
    /// Closed-form approximants and their correct digits
    Approx,
    /// Engel expansion of the fixed point
    Engel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Reversion,
    Lagrange,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Reversion => Route::Reversion,
            RouteArg::Lagrange => Route::Lagrange,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// Every (k, x) case of the pi-power identity, as CSV
    PiSeries,
}
