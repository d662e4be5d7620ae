//! Trajectory experiment: correlation between CCV and the transparency-order
//! family along LS-HWF runs.
//!
//! At every climb of a run, a sample of S-boxes sharing the incumbent's
//! Hamming-weight sequence (hence its CCV) is drawn, and the point
//! `(mean CCV, mean metric)` is recorded. Each run's points form a trajectory
//! whose Pearson coefficient is summarized over all runs.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{ccv_key, mto_beta_zero, rto_beta_zero, transparency_order};
use crate::rng::{RngStream, SEED_MIXER};
use crate::sbox::{hw_class_shuffle, SBox, SBoxError, MAX_BITS};
use crate::search::{ls_hwf, ClimbEvent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrajectoryError {
    #[error("degenerate trajectory: {0}")]
    DegenerateTrajectory(&'static str),
    #[error("need at least two values, got {0}")]
    InsufficientData(usize),
    #[error("empty sample")]
    EmptySample,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    SBox(#[from] SBoxError),
}

/// Metric correlated against CCV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Transparency order.
    To,
    /// Modified transparency order at β = 0.
    Mto0,
    /// Revised transparency order at β = 0.
    Rto0,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::To, Metric::Mto0, Metric::Rto0];

    pub fn name(self) -> &'static str {
        match self {
            Metric::To => "to",
            Metric::Mto0 => "mto0",
            Metric::Rto0 => "rto0",
        }
    }

    pub fn evaluate(self, sbox: &SBox) -> f64 {
        match self {
            Metric::To => transparency_order(sbox),
            Metric::Mto0 => mto_beta_zero(sbox),
            Metric::Rto0 => rto_beta_zero(sbox),
        }
    }

    /// 30 equal-CCV samples per climb, except RTO₀ which uses the incumbent alone.
    pub fn default_sample_size(self) -> usize {
        match self {
            Metric::Rto0 => 1,
            _ => 30,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = TrajectoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| TrajectoryError::InvalidConfig(format!("unknown metric {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub climb_index: usize,
    pub mean_ccv: f64,
    pub mean_metric: f64,
    pub metric: Metric,
    pub sample_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub run_id: usize,
    pub metric: Metric,
    pub points: Vec<TrajectoryPoint>,
    /// `None` when the trajectory is degenerate.
    pub pearson: Option<f64>,
    pub final_ccv: f64,
}

/// `size` S-boxes with the same weight sequence as `fstar`.
///
/// A sample of one is `fstar` itself; larger samples are independent
/// class-wise shuffles, member `s` drawn from `rng.child(s)`.
pub fn sample_equal_ccv(
    fstar: &SBox,
    size: usize,
    rng: &RngStream,
) -> Result<Vec<SBox>, TrajectoryError> {
    match size {
        0 => Err(TrajectoryError::EmptySample),
        1 => Ok(vec![fstar.clone()]),
        _ => Ok((0..size as u64)
            .map(|s| hw_class_shuffle(fstar, &rng.child(s)))
            .collect()),
    }
}

pub fn trajectory_point(
    sample: &[SBox],
    metric: Metric,
    climb_index: usize,
) -> Result<TrajectoryPoint, TrajectoryError> {
    if sample.is_empty() {
        return Err(TrajectoryError::EmptySample);
    }
    let keys: Vec<_> = sample.iter().map(ccv_key).collect();
    let count = sample.len() as f64;
    // Equal-weight samples share one exact key; avoid re-rounding its CCV.
    let mean_ccv = if keys.iter().all(|k| *k == keys[0]) {
        keys[0].ccv()
    } else {
        keys.iter().map(|k| k.ccv()).sum::<f64>() / count
    };
    let mean_metric = sample.iter().map(|s| metric.evaluate(s)).sum::<f64>() / count;
    Ok(TrajectoryPoint {
        climb_index,
        mean_ccv,
        mean_metric,
        metric,
        sample_size: sample.len(),
    })
}

/// Pearson product-moment coefficient of `(x, y)` pairs.
pub fn pearson_xy(pairs: &[(f64, f64)]) -> Result<f64, TrajectoryError> {
    if pairs.len() < 2 {
        return Err(TrajectoryError::DegenerateTrajectory(
            "fewer than two points",
        ));
    }
    let count = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / count;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / count;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(TrajectoryError::DegenerateTrajectory("constant coordinate"));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

pub fn pearson(points: &[TrajectoryPoint]) -> Result<f64, TrajectoryError> {
    let pairs: Vec<_> = points.iter().map(|p| (p.mean_ccv, p.mean_metric)).collect();
    pearson_xy(&pairs)
}

/// Arithmetic mean and sample standard deviation (divisor `len − 1`).
pub fn summary_stats(values: &[f64]) -> Result<(f64, f64), TrajectoryError> {
    if values.len() < 2 {
        return Err(TrajectoryError::InsufficientData(values.len()));
    }
    let count = values.len() as f64;
    let mean = values.iter().sum::<f64>() / count;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
    Ok((mean, var.sqrt()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: u32,
    pub metric: Metric,
    pub runs: usize,
    pub sample_size: usize,
    pub master_seed: u64,
}

impl ExperimentConfig {
    /// 30 runs with the metric's default sample size.
    pub fn new(n: u32, metric: Metric, master_seed: u64) -> Self {
        Self {
            n,
            metric,
            runs: 30,
            sample_size: metric.default_sample_size(),
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<(), TrajectoryError> {
        if !(2..=MAX_BITS).contains(&self.n) {
            return Err(TrajectoryError::InvalidConfig(format!(
                "n = {} outside 2..={MAX_BITS}",
                self.n
            )));
        }
        if self.runs < 2 {
            return Err(TrajectoryError::InvalidConfig(format!(
                "runs = {} but the summary needs at least 2",
                self.runs
            )));
        }
        if self.sample_size == 0 {
            return Err(TrajectoryError::InvalidConfig(
                "sample size must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub run_id: usize,
    pub climbs: usize,
    pub final_ccv: f64,
    pub pearson: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub m: u32,
    pub seed_mixer: String,
    pub std_estimator: String,
    pub sample_duplicates_allowed: bool,
    pub runs: Vec<RunSummary>,
    /// Coefficients of the non-degenerate runs, in run order.
    pub pearson_values: Vec<f64>,
    pub mean: Option<f64>,
    pub std_dev: Option<f64>,
    pub degenerate_runs: usize,
}

impl ExperimentSummary {
    /// Result is unreliable when more than half of the runs are degenerate
    /// or too few remain for a deviation.
    pub fn is_unreliable(&self) -> bool {
        2 * self.degenerate_runs > self.config.runs || self.mean.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub summary: ExperimentSummary,
    pub trajectories: Vec<Trajectory>,
}

fn point_for_climb(
    event: &ClimbEvent,
    config: &ExperimentConfig,
    run_stream: &RngStream,
) -> TrajectoryPoint {
    let climb_stream = run_stream.child(event.climb_index as u64);
    let sample = sample_equal_ccv(&event.sbox, config.sample_size, &climb_stream)
        .expect("sample size validated");
    let point =
        trajectory_point(&sample, config.metric, event.climb_index).expect("nonempty sample");
    debug_assert_eq!(point.mean_ccv, event.ccv_after);
    point
}

/// Builds one run's trajectory; run `r` uses stream `(seed, r)` and its
/// climb `k` samples from `(seed, r, k)`.
pub fn run_trajectory(
    config: &ExperimentConfig,
    run_id: usize,
) -> Result<Trajectory, TrajectoryError> {
    let run_stream = RngStream::new(config.master_seed).child(run_id as u64);
    let mut points = Vec::new();
    let result = ls_hwf(config.n, &run_stream, |event| {
        points.push(point_for_climb(event, config, &run_stream));
    })?;
    let pearson = pearson(&points).ok();
    Ok(Trajectory {
        run_id,
        metric: config.metric,
        points,
        pearson,
        final_ccv: result.best_ccv(),
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, TrajectoryError> {
    config.validate()?;
    let trajectories = (0..config.runs)
        .into_par_iter()
        .map(|r| run_trajectory(config, r))
        .collect::<Result<Vec<_>, _>>()?;

    let runs: Vec<RunSummary> = trajectories
        .iter()
        .map(|t| RunSummary {
            run_id: t.run_id,
            climbs: t.points.len(),
            final_ccv: t.final_ccv,
            pearson: t.pearson,
        })
        .collect();
    let pearson_values: Vec<f64> = trajectories.iter().filter_map(|t| t.pearson).collect();
    let degenerate_runs = trajectories.len() - pearson_values.len();
    let (mean, std_dev) = match summary_stats(&pearson_values) {
        Ok((mean, sd)) => (Some(mean), Some(sd)),
        Err(_) => (None, None),
    };
    let summary = ExperimentSummary {
        config: config.clone(),
        m: config.n,
        seed_mixer: SEED_MIXER.to_string(),
        std_estimator: "sample (divisor runs - 1)".to_string(),
        sample_duplicates_allowed: true,
        runs,
        pearson_values,
        mean,
        std_dev,
        degenerate_runs,
    };
    Ok(ExperimentReport {
        summary,
        trajectories,
    })
}
