//! Sweep configuration: command-line flags merged over an optional JSON file
//! with the same keys.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::Deserialize;
use steerlab::protocol::{Case, MrPolicy, Objective};
use steerlab::sweep::time_grid;
use steerlab::ReservoirParams;

use crate::error::{CliError, CliResult};

pub const DEFAULT_P: f64 = 0.8;
pub const DEFAULT_T_END: f64 = 30.0;
pub const DEFAULT_T_STEPS: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseArg {
    A,
    B,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::A => Case::A,
            CaseArg::B => Case::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveArg {
    Concurrence,
    Steering,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Concurrence => Objective::Concurrence,
            ObjectiveArg::Steering => Objective::Steering,
        }
    }
}

/// Reversal strength: a number, or one of the optimal policies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MrArg {
    Value(f64),
    Analytic,
    Numeric,
}

impl FromStr for MrArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "analytic" => Ok(MrArg::Analytic),
            "numeric" => Ok(MrArg::Numeric),
            other => other
                .parse::<f64>()
                .map(MrArg::Value)
                .map_err(|_| format!("expected a number, 'analytic' or 'numeric', got '{s}'")),
        }
    }
}

impl<'de> Deserialize<'de> for MrArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(MrArg::Value(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl From<OneOrMany> for Vec<f64> {
    fn from(v: OneOrMany) -> Self {
        match v {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(xs) => xs,
        }
    }
}

/// Flags shared by `sweep` and the JSON config file.
#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// Protocol scenario
    #[arg(long, value_enum)]
    pub case: Option<CaseArg>,
    /// Werner parameter(s), comma separated
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub p: Option<Vec<f64>>,
    /// Weak-measurement strength(s), comma separated
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub m: Option<Vec<f64>>,
    /// Reversal strength: a value in [0, 1), `analytic` or `numeric`
    #[arg(long)]
    pub mr: Option<MrArg>,
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long = "t-start")]
    pub t_start: Option<f64>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    #[arg(long = "t-steps")]
    pub t_steps: Option<usize>,
    /// Objective for `--mr numeric`
    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveArg>,
    /// Continue the decay factor into the Markovian regime
    #[arg(long = "allow-markovian")]
    pub allow_markovian: bool,
    /// Output CSV path (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with the same keys; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    case: Option<CaseArg>,
    p: Option<OneOrMany>,
    m: Option<OneOrMany>,
    mr: Option<MrArg>,
    gamma0: Option<f64>,
    lambda: Option<f64>,
    t_start: Option<f64>,
    t_end: Option<f64>,
    t_steps: Option<usize>,
    objective: Option<ObjectiveArg>,
    allow_markovian: Option<bool>,
    out: Option<PathBuf>,
}

fn read_file_config(path: &Path) -> CliResult<FileConfig> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: invalid config: {e}", path.display())))
}

/// A fully resolved sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub case: Case,
    pub ps: Vec<f64>,
    pub ms: Vec<f64>,
    pub mr: MrPolicy,
    pub reservoir: ReservoirParams,
    pub allow_markovian: bool,
    pub times: Vec<f64>,
    pub out: Option<PathBuf>,
}

impl SweepArgs {
    pub fn resolve(&self) -> CliResult<SweepPlan> {
        let file = match &self.config {
            Some(path) => read_file_config(path)?,
            None => FileConfig::default(),
        };
        let defaults = ReservoirParams::default();
        let objective: Objective = self
            .objective
            .or(file.objective)
            .unwrap_or(ObjectiveArg::Concurrence)
            .into();
        let mr = match self.mr.or(file.mr).unwrap_or(MrArg::Value(0.0)) {
            MrArg::Value(v) => MrPolicy::Explicit(v),
            MrArg::Analytic => MrPolicy::AnalyticOptimal,
            MrArg::Numeric => MrPolicy::NumericOptimal(objective),
        };
        let ps = self
            .p
            .clone()
            .or_else(|| file.p.map(Vec::from))
            .unwrap_or_else(|| vec![DEFAULT_P]);
        let ms = self
            .m
            .clone()
            .or_else(|| file.m.map(Vec::from))
            .unwrap_or_else(|| vec![0.0]);
        if ps.is_empty() || ms.is_empty() {
            return Err(CliError::usage("--p and --m need at least one value"));
        }
        let reservoir = ReservoirParams::new(
            self.gamma0.or(file.gamma0).unwrap_or(defaults.gamma0),
            self.lambda.or(file.lambda).unwrap_or(defaults.lambda),
        )?;
        let times = time_grid(
            self.t_start.or(file.t_start).unwrap_or(0.0),
            self.t_end.or(file.t_end).unwrap_or(DEFAULT_T_END),
            self.t_steps.or(file.t_steps).unwrap_or(DEFAULT_T_STEPS),
        )?;
        Ok(SweepPlan {
            case: self.case.or(file.case).unwrap_or(CaseArg::A).into(),
            ps,
            ms,
            mr,
            reservoir,
            allow_markovian: self.allow_markovian || file.allow_markovian.unwrap_or(false),
            times,
            out: self.out.clone().or(file.out),
        })
    }
}
