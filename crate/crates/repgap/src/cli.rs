//! Argument parsing and the validated run configuration.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use repgap_core::asymptotics::{BoundSide, FigureId, Quantity, SANDWICH_TOLERANCE};
use repgap_core::linalg::Field;
use repgap_core::monoids::DEFAULT_BUDGET;
use repgap_core::repr::{Denominator, GapMode, GapOptions, Truncation};
use repgap_core::Family;

use crate::error::CliError;

/// Environment fallback for `--threads`.
pub const THREADS_ENV: &str = "REPGAP_THREADS";

/// One or more sizes: `8`, `1..6` (inclusive), `10..1000:10` or `100,500,1000`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sizes {
    pub raw: String,
    pub values: Vec<usize>,
}

impl FromStr for Sizes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| -> Result<usize, String> {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        let mut values = Vec::new();
        for part in s.split(',') {
            if let Some((a, rest)) = part.split_once("..") {
                let (b, step) = match rest.split_once(':') {
                    Some((b, step)) => (b, num(step)?),
                    None => (rest, 1),
                };
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if step == 0 || a > b {
                    return Err(format!("empty size range `{part}`"));
                }
                values.extend((a..=b).step_by(step));
            } else {
                values.push(num(part)?);
            }
        }
        if values.contains(&0) {
            return Err("sizes must be at least 1".into());
        }
        Ok(Sizes {
            raw: s.to_string(),
            values,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Formula,
    Brute,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Semisimple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TruncateArg {
    Full,
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DenominatorArg {
    Full,
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EggboxFormat {
    Ascii,
    Dot,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Injection {
    /// Read the rigid arc rule the wrong way round during enumeration.
    FlippedArcRule,
}

#[derive(Parser, Debug)]
#[command(name = "repgap", version, about = "Diagram monoids, their cells and representation gaps")]
pub struct Cli {
    /// Worker threads; falls back to REPGAP_THREADS, then to the number of CPUs.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write artifacts under <OUT>/<family>_<n>/ instead of printing them.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Refuse enumerations predicted to exceed this many elements.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone)]
pub struct TableSource {
    #[command(flatten)]
    pub target: Target,
    /// Read the elements from a file written by `enumerate` instead.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List every element of a monoid as canonical diagram lines.
    Enumerate(Target),
    /// Green's relations: eggbox text, DOT graph and green.csv.
    Eggbox {
        #[command(flatten)]
        source: TableSource,
        #[arg(long, value_enum, default_value_t = EggboxFormat::Ascii)]
        format: EggboxFormat,
    },
    /// Left, right and J-cell sizes per (k, j).
    Counts {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: Sizes,
        #[arg(long, value_enum, default_value_t = Source::Formula)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Gram matrices of the J-cells with their ranks.
    Gram {
        #[command(flatten)]
        source: TableSource,
        /// Only J-cells with this many through strands.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "q")]
        field: Field,
    },
    /// The representation gap and gap ratio.
    Gap {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: Sizes,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Closed forms or enumeration; defaults to closed forms where they exist.
        #[arg(long, value_enum)]
        source: Option<Source>,
        #[arg(long, default_value = "q")]
        field: Field,
        #[arg(long, value_enum, default_value_t = TruncateArg::Full)]
        truncate: TruncateArg,
        #[arg(long, value_enum, default_value_t = DenominatorArg::Full)]
        denominator: DenominatorArg,
        #[arg(long)]
        exclude_window_edges: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Evaluate the asymptotic bound expressions.
    Bounds {
        /// All families when omitted.
        #[arg(long)]
        family: Option<Family>,
        #[arg(long)]
        quantity: Option<Quantity>,
        #[arg(long)]
        side: Option<BoundSide>,
        #[arg(long, default_value = "10..1000:10")]
        n: Sizes,
        /// Print the expressions instead of evaluating them.
        #[arg(long)]
        show: bool,
    },
    /// Export the figure series as figure.csv.
    Figures {
        /// All figures when omitted.
        #[arg(long)]
        figure: Option<FigureId>,
        /// Sizes for intro_gap, or the single size of a per-k figure.
        #[arg(long)]
        n: Option<Sizes>,
    },
    /// Run the oracle battery.
    Selfcheck {
        /// Restrict to monoids with n <= 2.
        #[arg(long)]
        quick: bool,
        #[arg(long, value_enum)]
        inject: Option<Injection>,
        /// log10 slack of the asymptotic sandwich.
        #[arg(long, default_value_t = SANDWICH_TOLERANCE)]
        tolerance: f64,
    },
}

/// A fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub threads: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli, env_threads: Option<String>) -> Result<Self, CliError> {
        let threads = match (cli.threads, env_threads) {
            (Some(t), _) => t,
            (None, Some(s)) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{THREADS_ENV}=`{s}` is not a thread count")))?,
            (None, None) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        if threads == 0 {
            return Err(CliError::Usage("thread count must be at least 1".into()));
        }
        validate(&cli.command)?;
        Ok(RunConfig {
            command: cli.command,
            threads,
            out: cli.out,
        })
    }
}

fn validate(command: &Command) -> Result<(), CliError> {
    let usage = |m: String| Err(CliError::Usage(m));
    match command {
        Command::Enumerate(t) if t.n == 0 => usage("n must be at least 1".into()),
        Command::Eggbox { source, .. } | Command::Gram { source, .. } if source.input.is_none() && source.target.n == 0 => {
            usage("n must be at least 1".into())
        }
        Command::Gap { family, mode, source, .. } => {
            let formula_possible = family.is_rigid() && *mode == ModeArg::Semisimple;
            match source {
                Some(Source::Formula | Source::Both) if !formula_possible => usage(format!(
                    "closed forms give semisimple gaps of rigid families only, not {} gaps of {family}", mode.gap_mode()
                )),
                _ => Ok(()),
            }
        }
        Command::Selfcheck { tolerance, .. } if !(tolerance.is_finite() && *tolerance >= 0.0) => {
            usage("tolerance must be a non-negative number".into())
        }
        _ => Ok(()),
    }
}

impl ModeArg {
    pub fn gap_mode(self) -> GapMode {
        match self {
            ModeArg::Exact => GapMode::Exact,
            ModeArg::Semisimple => GapMode::Semisimple,
        }
    }
}

/// Gap options from the individual flags.
pub fn gap_options(
    mode: ModeArg,
    field: Field,
    truncate: TruncateArg,
    denominator: DenominatorArg,
    exclude_window_edges: bool,
) -> GapOptions {
    GapOptions {
        mode: mode.gap_mode(),
        truncation: match truncate {
            TruncateArg::Full => Truncation::Full,
            TruncateArg::Paper => Truncation::Paper,
        },
        field,
        denominator: match denominator {
            DenominatorArg::Full => Denominator::Full,
            DenominatorArg::Truncated => Denominator::Truncated,
        },
        exclude_window_edges,
    }
}
