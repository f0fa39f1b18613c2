//! Figure-data presets. Every panel is a CSV with the standard sweep header.
//!
//! | figure | files | content |
//! |---|---|---|
//! | 2 | `fig2a`, `fig2b` | case A, p = 0.8: baseline (m = mr = 0), then m = 0, 0.4, 0.8 with analytic mr; curves stacked over t |
//! | 3 | `fig3a`..`fig3c` | case A, analytic mr: (m, t) at p = 0.8; (p, t) at m = 0.2; (p, m) at t = 8 |
//! | 4 | `fig4a`..`fig4c` | case B, analytic mr: (m, t) at p = 0.2; (p, t) at m = 0.2; (p, m) at t = 2 |
//! | 5 | `fig5a`, `fig5b` | as figure 2 for case B at p = 0.9 |
//! | 6 | `fig6a`..`fig6c` | case B, analytic mr: (m, t) at p = 0.9; (p, t) at m = 0.4; (p, m) at t = 8 |
//! | 7 | `fig7a`, `fig7b` | no WM/WMR, (p, t): case A, case B |
//! | 8 | `fig8a_mr`, `fig8a_m`, `fig8b_mr`, `fig8b_m` | (m, t) at p = 0.9, case A / B, with analytic WMR (`_mr`) or WM only (`_m`) |
//!
//! Surfaces list the first axis in the outer loop. Ranges: t ∈ [0, 30],
//! m ∈ [0, 0.99], p ∈ [0, 1].

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::Args;
use rayon::ThreadPool;
use steerlab::protocol::{Case, MrPolicy};
use steerlab::sweep::linspace;
use steerlab::{ReservoirParams, ScenarioConfig, SweepRow};

use crate::error::{CliError, CliResult};
use crate::exec::{evaluate_points, Point};
use crate::format::write_rows;

pub const FIGURES: std::ops::RangeInclusive<u32> = 2..=8;
pub const DEFAULT_CURVE_POINTS: usize = 600;
pub const DEFAULT_SURFACE_POINTS: usize = 120;
const T_MAX: f64 = 30.0;
const M_MAX: f64 = 0.99;

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// Figure number, 2 to 8
    pub n: u32,
    /// Directory for the CSV files
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
    /// Points per 1-D curve
    #[arg(long = "curve-points", default_value_t = DEFAULT_CURVE_POINTS)]
    pub curve_points: usize,
    /// Points per axis of a 2-D surface
    #[arg(long = "surface-points", default_value_t = DEFAULT_SURFACE_POINTS)]
    pub surface_points: usize,
    /// Override the Werner parameter of panels with a fixed p
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long = "allow-markovian")]
    pub allow_markovian: bool,
}

struct Panel {
    name: &'static str,
    points: Vec<Point>,
}

struct Builder {
    reservoir: ReservoirParams,
    allow_markovian: bool,
    curve: usize,
    surface: usize,
    p_override: Option<f64>,
}

impl Builder {
    fn cfg(&self, case: Case, p: f64, m: f64, mr_policy: MrPolicy) -> ScenarioConfig {
        ScenarioConfig {
            case,
            p,
            m,
            mr_policy,
            reservoir: self.reservoir,
            allow_markovian: self.allow_markovian,
        }
    }

    fn p(&self, preset: f64) -> f64 {
        self.p_override.unwrap_or(preset)
    }

    fn axis_t(&self, n: usize) -> Vec<f64> {
        linspace(0.0, T_MAX, n)
    }

    fn axis_m(&self) -> Vec<f64> {
        linspace(0.0, M_MAX, self.surface)
    }

    fn axis_p(&self) -> Vec<f64> {
        linspace(0.0, 1.0, self.surface)
    }

    /// Baseline plus analytic-mr curves for m ∈ {0, 0.4, 0.8}.
    fn curves(&self, case: Case, p: f64) -> Vec<Point> {
        let mut configs = vec![self.cfg(case, p, 0.0, MrPolicy::Explicit(0.0))];
        for m in [0.0, 0.4, 0.8] {
            configs.push(self.cfg(case, p, m, MrPolicy::AnalyticOptimal));
        }
        let times = self.axis_t(self.curve);
        configs
            .into_iter()
            .flat_map(|c| times.iter().map(move |&t| (c, t)))
            .collect()
    }

    fn m_by_t(&self, case: Case, p: f64, mr: MrPolicy) -> Vec<Point> {
        let times = self.axis_t(self.surface);
        let mut pts = Vec::with_capacity(self.surface * times.len());
        for m in self.axis_m() {
            let c = self.cfg(case, p, m, mr);
            pts.extend(times.iter().map(|&t| (c, t)));
        }
        pts
    }

    fn p_by_t(&self, case: Case, m: f64, mr: MrPolicy) -> Vec<Point> {
        let times = self.axis_t(self.surface);
        let mut pts = Vec::with_capacity(self.surface * times.len());
        for p in self.axis_p() {
            let c = self.cfg(case, p, m, mr);
            pts.extend(times.iter().map(|&t| (c, t)));
        }
        pts
    }

    fn p_by_m(&self, case: Case, t: f64) -> Vec<Point> {
        let ms = self.axis_m();
        let mut pts = Vec::with_capacity(self.surface * ms.len());
        for p in self.axis_p() {
            for &m in &ms {
                pts.push((self.cfg(case, p, m, MrPolicy::AnalyticOptimal), t));
            }
        }
        pts
    }

    fn panels(&self, n: u32) -> CliResult<Vec<Panel>> {
        use Case::{A, B};
        let analytic = MrPolicy::AnalyticOptimal;
        let none = MrPolicy::Explicit(0.0);
        let panel = |name, points| Panel { name, points };
        Ok(match n {
            2 => {
                let pts = self.curves(A, self.p(0.8));
                vec![panel("fig2a", pts.clone()), panel("fig2b", pts)]
            }
            3 => vec![
                panel("fig3a", self.m_by_t(A, self.p(0.8), analytic)),
                panel("fig3b", self.p_by_t(A, 0.2, analytic)),
                panel("fig3c", self.p_by_m(A, 8.0)),
            ],
            4 => vec![
                panel("fig4a", self.m_by_t(B, self.p(0.2), analytic)),
                panel("fig4b", self.p_by_t(B, 0.2, analytic)),
                panel("fig4c", self.p_by_m(B, 2.0)),
            ],
            5 => {
                let pts = self.curves(B, self.p(0.9));
                vec![panel("fig5a", pts.clone()), panel("fig5b", pts)]
            }
            6 => vec![
                panel("fig6a", self.m_by_t(B, self.p(0.9), analytic)),
                panel("fig6b", self.p_by_t(B, 0.4, analytic)),
                panel("fig6c", self.p_by_m(B, 8.0)),
            ],
            7 => vec![
                panel("fig7a", self.p_by_t(A, 0.0, none)),
                panel("fig7b", self.p_by_t(B, 0.0, none)),
            ],
            8 => {
                let p = self.p(0.9);
                vec![
                    panel("fig8a_mr", self.m_by_t(A, p, analytic)),
                    panel("fig8a_m", self.m_by_t(A, p, none)),
                    panel("fig8b_mr", self.m_by_t(B, p, analytic)),
                    panel("fig8b_m", self.m_by_t(B, p, none)),
                ]
            }
            other => {
                return Err(CliError::usage(format!(
                    "unknown figure {other}; expected {} to {}",
                    FIGURES.start(),
                    FIGURES.end()
                )))
            }
        })
    }
}

fn builder(args: &FigureArgs) -> CliResult<Builder> {
    if args.curve_points == 0 || args.surface_points == 0 {
        return Err(CliError::usage("grid resolutions must be positive"));
    }
    let defaults = ReservoirParams::default();
    Ok(Builder {
        reservoir: ReservoirParams::new(
            args.gamma0.unwrap_or(defaults.gamma0),
            args.lambda.unwrap_or(defaults.lambda),
        )?,
        allow_markovian: args.allow_markovian,
        curve: args.curve_points,
        surface: args.surface_points,
        p_override: args.p,
    })
}

/// Rows of every panel of figure `args.n`, keyed by file stem.
pub fn figure_rows(
    pool: &ThreadPool,
    args: &FigureArgs,
) -> CliResult<Vec<(&'static str, Vec<SweepRow>)>> {
    let panels = builder(args)?.panels(args.n)?;
    let mut done: Vec<(Vec<Point>, Vec<SweepRow>)> = Vec::new();
    let mut out = Vec::with_capacity(panels.len());
    for panel in panels {
        let rows = match done.iter().find(|(pts, _)| *pts == panel.points) {
            Some((_, rows)) => rows.clone(),
            None => {
                let rows = evaluate_points(pool, &panel.points)?;
                done.push((panel.points, rows.clone()));
                rows
            }
        };
        out.push((panel.name, rows));
    }
    Ok(out)
}

/// Writes figure `args.n` into `args.out_dir`; returns the files written.
pub fn write_figure(pool: &ThreadPool, args: &FigureArgs) -> CliResult<Vec<PathBuf>> {
    let panels = figure_rows(pool, args)?;
    fs::create_dir_all(&args.out_dir).map_err(|e| CliError::io(&args.out_dir, e))?;
    let mut written = Vec::with_capacity(panels.len());
    for (name, rows) in panels {
        let path = args.out_dir.join(format!("{name}.csv"));
        write_csv(&path, &rows)?;
        written.push(path);
    }
    Ok(written)
}

pub fn write_csv(path: &Path, rows: &[SweepRow]) -> CliResult<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    write_rows(BufWriter::new(file), rows).map_err(|e| CliError::io(path, e))
}
