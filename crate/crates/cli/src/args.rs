use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gammalab_core::exact::suite::DEFAULT_SEED;
use gammalab_core::sequences::TailMethod;

use crate::range::NRange;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "gammalab", version, about = "Exact and certified checks of the Euler-constant decomposition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Fixed starting working precision in bits (default: derived per n).
    #[arg(long, global = true)]
    pub bits: Option<u32>,
    /// Certified bits wanted after the binary point of {log S_n}.
    #[arg(long = "frac-bits", global = true, default_value_t = 64)]
    pub frac_bits: u32,
    #[arg(long = "guard-bits", global = true, default_value_t = 64)]
    pub guard_bits: u32,
    /// Precision ceiling for automatic escalation.
    #[arg(long = "max-bits", global = true, default_value_t = 1 << 16)]
    pub max_bits: u32,
    /// Fail instead of raising the precision.
    #[arg(long = "no-escalate", global = true)]
    pub no_escalate: bool,
    /// Absolute tolerance for the series value of I_n, as a decimal such as 1e-40.
    #[arg(long = "tail-eps", global = true)]
    pub tail_eps: Option<String>,
    #[arg(long = "tail-method", global = true, value_enum, default_value_t = TailMethodArg::EulerMaclaurin)]
    pub tail_method: TailMethodArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Data file; the run manifest goes to `<out>.manifest.json`. Without it data goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long = "cache-dir", global = true, env = "GAMMALAB_CACHE")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailMethodArg {
    EulerMaclaurin,
    Majorant,
}

impl From<TailMethodArg> for TailMethod {
    fn from(t: TailMethodArg) -> Self {
        match t {
            TailMethodArg::EulerMaclaurin => TailMethod::EulerMaclaurin,
            TailMethodArg::Majorant => TailMethod::Majorant,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the exact identity suite.
    Verify {
        #[arg(long = "n-max", default_value_t = 200)]
        n_max: u64,
    },
    /// Per-n table of every quantity.
    Table {
        #[arg(long = "n")]
        n: NRange,
    },
    /// Criterion quantity Q_n with certified fractional parts.
    Criterion {
        #[arg(long = "n")]
        n: NRange,
    },
    /// Ratio-to-model scans of the asymptotic laws.
    Asym {
        /// Law id (repeatable); all laws by default.
        #[arg(long = "law")]
        laws: Vec<String>,
        /// Comma-separated n values; defaults to each law's own points.
        #[arg(long, value_delimiter = ',')]
        points: Vec<u64>,
        /// Range of n instead of explicit points.
        #[arg(long = "n", conflicts_with = "points")]
        n: Option<NRange>,
    },
    /// Euler's constant to the requested number of decimals.
    Gamma {
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Table { .. } => "table",
            Command::Criterion { .. } => "criterion",
            Command::Asym { .. } => "asym",
            Command::Gamma { .. } => "gamma",
        }
    }

    pub fn n_range(&self) -> Option<String> {
        match self {
            Command::Verify { n_max } => Some(format!("1..{n_max}")),
            Command::Table { n } | Command::Criterion { n } => Some(n.to_string()),
            Command::Asym { n, points, .. } => n
                .map(|r| r.to_string())
                .or_else(|| (!points.is_empty()).then(|| points.iter().map(u64::to_string).collect::<Vec<_>>().join(","))),
            Command::Gamma { .. } => None,
        }
    }
}
