//! Command-line front end for `steerlab`: parameter sweeps, figure data and
//! a decay-factor probe. All output is CSV.

pub mod config;
pub mod error;
pub mod exec;
pub mod figures;
pub mod format;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use steerlab::channel::{decay_factor, Regime};
use steerlab::sweep::time_grid;
use steerlab::{ReservoirParams, ScenarioConfig, SweepRow};

use config::{SweepArgs, SweepPlan};
use error::{CliError, CliResult};
use exec::{evaluate_points, thread_pool, Point};
use figures::FigureArgs;

#[derive(Debug, Parser)]
#[command(
    name = "steerlab",
    version,
    about = "Steering and entanglement protection under non-Markovian damping"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a protocol configuration over a time grid
    Sweep(SweepArgs),
    /// Write the data grids of one figure
    Figure(FigureArgs),
    /// Tabulate the decay factor G(t)
    GtProbe(ProbeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long = "t-start", default_value_t = 0.0)]
    pub t_start: f64,
    #[arg(long = "t-end", default_value_t = 30.0)]
    pub t_end: f64,
    #[arg(long = "t-steps", default_value_t = 3001)]
    pub t_steps: usize,
    #[arg(long = "allow-markovian")]
    pub allow_markovian: bool,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CliResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Err(CliError::usage(e.to_string())),
        Err(e) => {
            print!("{e}");
            return Ok(());
        }
    };
    match cli.command {
        Command::Sweep(args) => {
            let plan = args.resolve()?;
            let rows = run_sweep(&plan)?;
            emit(plan.out.as_deref(), |w| format::write_rows(w, &rows))
        }
        Command::Figure(args) => {
            let pool = thread_pool()?;
            for path in figures::write_figure(&pool, &args)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::GtProbe(args) => {
            let (regime, rows) = gt_probe(&args)?;
            emit(args.out.as_deref(), |mut w| {
                writeln!(w, "# regime: {regime}")?;
                writeln!(w, "t,g")?;
                for (t, g) in &rows {
                    writeln!(w, "{},{}", format::fmt_g(*t), format::fmt_g(*g))?;
                }
                w.flush()
            })
        }
    }
}

fn emit<F>(out: Option<&Path>, write: F) -> CliResult<()>
where
    F: FnOnce(Box<dyn Write>) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            write(Box::new(BufWriter::new(file))).map_err(|e| CliError::io(path, e))
        }
        None => {
            write(Box::new(io::stdout().lock())).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

/// Points of a sweep: every (p, m) combination, each over the full time grid.
pub fn sweep_points(plan: &SweepPlan) -> Vec<Point> {
    let mut pts = Vec::with_capacity(plan.ps.len() * plan.ms.len() * plan.times.len());
    for &p in &plan.ps {
        for &m in &plan.ms {
            let cfg = ScenarioConfig {
                case: plan.case,
                p,
                m,
                mr_policy: plan.mr,
                reservoir: plan.reservoir,
                allow_markovian: plan.allow_markovian,
            };
            pts.extend(plan.times.iter().map(|&t| (cfg, t)));
        }
    }
    pts
}

pub fn run_sweep(plan: &SweepPlan) -> CliResult<Vec<SweepRow>> {
    let pool = thread_pool()?;
    evaluate_points(&pool, &sweep_points(plan))
}

fn regime_label(regime: Regime) -> &'static str {
    match regime {
        Regime::NonMarkovian => "non-markovian",
        Regime::Critical => "critical",
        Regime::Markovian => "markovian",
    }
}

/// Decay-factor table and a regime description for the header.
pub fn gt_probe(args: &ProbeArgs) -> CliResult<(String, Vec<(f64, f64)>)> {
    let defaults = ReservoirParams::default();
    let res = ReservoirParams::new(
        args.gamma0.unwrap_or(defaults.gamma0),
        args.lambda.unwrap_or(defaults.lambda),
    )?;
    let times = time_grid(args.t_start, args.t_end, args.t_steps)?;
    let rows = times
        .into_iter()
        .map(|t| decay_factor(&res, t, args.allow_markovian).map(|g| (t, g)))
        .collect::<Result<Vec<_>, _>>()?;
    let label = format!(
        "{} (gamma0 = {}, lambda = {})",
        regime_label(res.regime()),
        format::fmt_g(res.gamma0),
        format::fmt_g(res.lambda)
    );
    Ok((label, rows))
}
