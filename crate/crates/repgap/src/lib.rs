//! Command line front end of `repgap-core`: file formats, CSV exports,
//! parallel drivers and the self check.

pub mod cli;
pub mod commands;
pub mod counting;
pub mod error;
pub mod io;
pub mod parallel;
pub mod selfcheck;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use repgap_core::diagram::ArcOrientation;

use cli::{gap_options, Cli, Command, Injection, RunConfig, Source, THREADS_ENV};
use error::CliError;
use io::Sink;
use selfcheck::Battery;

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", err.line());
            return err.exit_code();
        }
    };
    match RunConfig::from_cli(cli, std::env::var(THREADS_ENV).ok()).and_then(|c| execute(&c)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.line());
            e.exit_code()
        }
    }
}

/// Runs a validated configuration inside a pool of `config.threads` workers.
pub fn execute(config: &RunConfig) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", config.threads)))?;
    let sink = Sink {
        out: config.out.clone(),
    };
    pool.install(|| dispatch(&config.command, &sink))
}

fn dispatch(command: &Command, sink: &Sink) -> Result<(), CliError> {
    match command {
        Command::Enumerate(t) => commands::enumerate(t, sink),
        Command::Eggbox { source, format } => commands::eggbox(source, *format, sink),
        Command::Counts {
            family,
            n,
            source,
            budget,
        } => commands::counts(*family, n, *source, *budget, sink),
        Command::Gram { source, k, field } => commands::gram(source, *k, *field, sink),
        Command::Gap {
            family,
            n,
            mode,
            source,
            field,
            truncate,
            denominator,
            exclude_window_edges,
            budget,
        } => {
            let opts = gap_options(*mode, *field, *truncate, *denominator, *exclude_window_edges);
            let source = source.unwrap_or(if family.is_rigid() && *mode == cli::ModeArg::Semisimple {
                Source::Formula
            } else {
                Source::Brute
            });
            commands::gap(*family, n, &opts, source, *budget, sink)
        }
        Command::Bounds {
            family,
            quantity,
            side,
            n,
            show,
        } => commands::bounds(*family, *quantity, *side, n, *show, sink),
        Command::Figures { figure, n } => commands::figures(*figure, n.as_ref(), sink),
        Command::Selfcheck {
            quick,
            inject,
            tolerance,
        } => {
            let battery = Battery {
                quick: *quick,
                orientation: match inject {
                    Some(Injection::FlippedArcRule) => ArcOrientation::Mirrored,
                    None => ArcOrientation::Picture,
                },
                tolerance: *tolerance,
            };
            let report = battery.run()?;
            let label = if *quick { "selfcheck_quick" } else { "selfcheck_full" };
            sink.emit(label, "selfcheck.txt", &report, true)
        }
    }
}
