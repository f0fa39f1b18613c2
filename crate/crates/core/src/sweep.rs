//! Point evaluation of protocol configurations and time-grid helpers.

use crate::error::{invalid, Result};
use crate::measures::{bures_fidelity, concurrence, steering_of};
use crate::protocol::ScenarioConfig;
use crate::qstate::{werner, DensityMatrix4};

/// CSV column names, in [`SweepRow::fields`] order.
pub const COLUMNS: [&str; 10] = [
    "t",
    "g",
    "p",
    "m",
    "mr",
    "concurrence",
    "si",
    "s",
    "fidelity",
    "success_prob",
];

/// Measures of one protocol configuration at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub g: f64,
    pub p: f64,
    pub m: f64,
    pub mr: f64,
    pub concurrence: f64,
    pub si: f64,
    pub s: f64,
    /// Bures fidelity against the initial Werner state.
    pub fidelity: f64,
    pub success_prob: f64,
}

impl SweepRow {
    pub fn fields(&self) -> [f64; 10] {
        [
            self.t,
            self.g,
            self.p,
            self.m,
            self.mr,
            self.concurrence,
            self.si,
            self.s,
            self.fidelity,
            self.success_prob,
        ]
    }

    /// Checks the documented ranges of every measure.
    pub fn in_range(&self) -> bool {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        unit(self.g)
            && unit(self.p)
            && (0.0..1.0).contains(&self.m)
            && (0.0..1.0).contains(&self.mr)
            && unit(self.concurrence)
            && self.si.is_finite()
            && unit(self.s)
            && unit(self.fidelity)
            && self.success_prob > 0.0
            && self.success_prob <= 1.0
    }
}

/// Measures of `cfg` at time `t`.
pub fn evaluate(cfg: &ScenarioConfig, t: f64) -> Result<SweepRow> {
    let initial = werner(cfg.p)?;
    evaluate_against(cfg, t, &initial)
}

/// As [`evaluate`], with the initial state supplied by the caller.
pub fn evaluate_against(
    cfg: &ScenarioConfig,
    t: f64,
    initial: &DensityMatrix4,
) -> Result<SweepRow> {
    let out = cfg.outcome_at(t)?;
    let steering = steering_of(&out.state)?;
    Ok(SweepRow {
        t,
        g: out.g_used,
        p: cfg.p,
        m: cfg.m,
        mr: out.mr_used,
        concurrence: concurrence(&out.state)?,
        si: steering.si,
        s: steering.s,
        fidelity: bures_fidelity(initial, &out.state)?,
        success_prob: out.success_prob,
    })
}

/// `steps` equally spaced points from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        n => {
            let h = (end - start) / (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i + 1 == n {
                        end
                    } else {
                        start + h * i as f64
                    }
                })
                .collect()
        }
    }
}

/// Builds a time grid and checks that it is nonempty, nonnegative and
/// strictly increasing.
pub fn time_grid(start: f64, end: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(invalid("time grid needs at least one point"));
    }
    if !(start.is_finite() && end.is_finite()) || start < 0.0 {
        return Err(invalid(format!("invalid time range [{start}, {end}]")));
    }
    if steps > 1 && end <= start {
        return Err(invalid(format!(
            "time grid must be strictly increasing (start {start}, end {end})"
        )));
    }
    Ok(linspace(start, end, steps))
}

/// Sequential sweep over `times`.
pub fn run(cfg: &ScenarioConfig, times: &[f64]) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let initial = werner(cfg.p)?;
    times
        .iter()
        .map(|&t| evaluate_against(cfg, t, &initial))
        .collect()
}
