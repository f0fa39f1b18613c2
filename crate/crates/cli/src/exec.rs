//! Parallel evaluation of sweep points with order-preserving collection.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use steerlab::sweep::evaluate;
use steerlab::{ScenarioConfig, SweepRow};

use crate::error::{CliError, CliResult};

pub const THREADS_ENV: &str = "STEERLAB_THREADS";

/// Worker count from `STEERLAB_THREADS`; `None` (all cores) when unset or 0.
pub fn thread_limit() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(CliError::usage(format!(
                "{THREADS_ENV} must be a nonnegative integer, got '{v}'"
            ))),
        },
    }
}

pub fn thread_pool() -> CliResult<ThreadPool> {
    let mut builder = ThreadPoolBuilder::new();
    if let Some(n) = thread_limit()? {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Numeric(format!("cannot start worker pool: {e}")))
}

/// One sweep point: a configuration at a time.
pub type Point = (ScenarioConfig, f64);

/// Evaluates every point; rows come back in input order.
pub fn evaluate_points(pool: &ThreadPool, points: &[Point]) -> CliResult<Vec<SweepRow>> {
    for (cfg, _) in points {
        cfg.validate()?;
    }
    let rows = pool.install(|| {
        points
            .par_iter()
            .map(|(cfg, t)| evaluate(cfg, *t))
            .collect::<Result<Vec<_>, _>>()
    })?;
    if let Some(bad) = rows.iter().find(|r| !r.in_range()) {
        return Err(CliError::Numeric(format!("row out of range: {bad:?}")));
    }
    Ok(rows)
}
