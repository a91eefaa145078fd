//! The `sfpkit` command line. One verb per pipeline stage; every random
//! choice is keyed by an explicit `--seed`.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or format error,
//! 3 evaluation error. A failing command removes the files it wrote.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;

mod augment_cmd;
mod colorize;
mod convert;
pub mod eval;
mod output;
mod scenes;
mod toyset;

pub use eval::WeightingArg;
pub use output::OutputSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Usage = 1,
    Data = 2,
    Evaluation = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::Config(_) | Error::Parameter(_) => ExitStatus::Usage,
            Error::Evaluation(_) => ExitStatus::Evaluation,
            Error::Dimension(_)
            | Error::NonFinite(_)
            | Error::Format(_)
            | Error::Missing { .. }
            | Error::Io { .. } => ExitStatus::Data,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sfpkit",
    version,
    about = "Shape-from-polarization dataset tooling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Quad2stokes,
    Stokes2quad,
    Stokes2cue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Pre,
    Post,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CueKind {
    Aolp,
    Dolp,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between quad, Stokes and cue planes of one or more scenes.
    Convert {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Directory holding `{scene}_{plane}.pfm` inputs.
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "scene", required = true)]
        scenes: Vec<String>,
        /// Collapse Stokes planes to luminance before computing cues.
        #[arg(long)]
        luminance: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Augment every scene of a manifest of clean Stokes renders.
    Augment {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config's mode.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score predicted normal maps against ground truth.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        gt: PathBuf,
        #[arg(long)]
        mask: PathBuf,
        /// Restrict to the scenes of this manifest instead of scanning `--gt`.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![11.25, 22.5])]
        thresholds: Vec<f64>,
        #[arg(long, value_enum, default_value_t = WeightingArg::Image)]
        weighting: WeightingArg,
        /// Report file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample scene specs for an external polarized renderer.
    Scenegen {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a toy dataset with the analytic forward model.
    Toyset {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a DoLP or AoLP float map as an 8-bit PNG.
    Colorize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: CueKind,
        /// DoLP map used to modulate AoLP brightness.
        #[arg(long)]
        dolp: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        channel: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Runs a parsed command, returning the text destined for stdout.
pub fn execute(cli: Cli) -> crate::Result<String> {
    match cli.command {
        Command::Convert {
            direction,
            input,
            scenes,
            luminance,
            out,
        } => convert::run(direction, &input, &scenes, luminance, &out),
        Command::Augment {
            manifest,
            config,
            mode,
            seed,
            jobs,
            out,
        } => augment_cmd::run(&manifest, config.as_deref(), mode, seed, jobs, &out),
        Command::Eval {
            pred,
            gt,
            mask,
            manifest,
            thresholds,
            weighting,
            out,
        } => eval::run(&eval::EvalArgs {
            pred,
            gt,
            mask,
            manifest,
            thresholds,
            weighting,
            out,
        }),
        Command::Scenegen {
            catalog,
            n,
            seed,
            jobs,
            out,
        } => scenes::run(&catalog, n, seed, jobs, &out),
        Command::Toyset {
            n,
            seed,
            config,
            jobs,
            out,
        } => toyset::run(n, seed, config.as_deref(), jobs, &out),
        Command::Colorize {
            input,
            kind,
            dolp,
            channel,
            out,
        } => colorize::run(&input, kind, dolp.as_deref(), channel, &out),
    }
}

/// Parses `args` (program name first), executes, prints, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitStatus::Usage
            } else {
                ExitStatus::Success
            };
            let _ = e.print();
            return code.code();
        }
    };
    match execute(cli) {
        Ok(stdout) => {
            print!("{stdout}");
            ExitStatus::Success.code()
        }
        Err(e) => {
            eprintln!("sfpkit: {e}");
            ExitStatus::for_error(&e).code()
        }
    }
}

pub(crate) fn thread_pool(jobs: usize) -> crate::Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))
}

/// Split assignment by scene index: 80% train, 10% val, 10% test.
pub(crate) fn split_for_index(index: u64) -> crate::imageio::Split {
    use crate::imageio::Split;
    match index % 10 {
        8 => Split::Val,
        9 => Split::Test,
        _ => Split::Train,
    }
}

pub(crate) fn create_dir(dir: &std::path::Path) -> crate::Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}
