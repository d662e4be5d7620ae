//! On-disk formats for search and experiment results.
//!
//! * climbs CSV: `run_id,climb_index,i,j,ccv`
//! * `trajectories.csv`: `run_id,climb_index,mean_ccv,mean_metric,metric`
//! * `summary.json`: [`ExperimentSummary`]
//! * plot data: one `mean_ccv mean_metric` block per non-degenerate run,
//!   blocks separated by a blank line
//!
//! Floats are written in their shortest round-trip representation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::search::SearchResult;
use crate::trajectory::{pearson_xy, ExperimentSummary, Metric, Trajectory};

pub const CLIMBS_HEADER: [&str; 5] = ["run_id", "climb_index", "i", "j", "ccv"];
pub const TRAJECTORIES_HEADER: [&str; 5] =
    ["run_id", "climb_index", "mean_ccv", "mean_metric", "metric"];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unexpected header {found:?}, expected {expected:?}")]
    Header {
        found: Vec<String>,
        expected: Vec<String>,
    },
    #[error("no trajectory rows")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClimbRow {
    pub run_id: usize,
    pub climb_index: usize,
    pub i: usize,
    pub j: usize,
    pub ccv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub run_id: usize,
    pub climb_index: usize,
    pub mean_ccv: f64,
    pub mean_metric: f64,
    pub metric: Metric,
}

fn write_rows<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String, ReportError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn read_rows<T: for<'de> Deserialize<'de>>(
    text: &str,
    header: &[&str],
) -> Result<Vec<T>, ReportError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let found: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if found != header {
        return Err(ReportError::Header {
            found,
            expected: header.iter().map(|s| s.to_string()).collect(),
        });
    }
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}

pub fn climbs_csv(run_id: usize, result: &SearchResult) -> Result<String, ReportError> {
    let rows: Vec<ClimbRow> = result
        .climbs
        .iter()
        .map(|e| ClimbRow {
            run_id,
            climb_index: e.climb_index,
            i: e.i,
            j: e.j,
            ccv: e.ccv_after,
        })
        .collect();
    write_rows(&CLIMBS_HEADER, &rows)
}

pub fn parse_climbs_csv(text: &str) -> Result<Vec<ClimbRow>, ReportError> {
    read_rows(text, &CLIMBS_HEADER)
}

/// All points of all runs, in run order.
pub fn trajectories_csv(trajectories: &[Trajectory]) -> Result<String, ReportError> {
    let rows: Vec<TrajectoryRow> = trajectories
        .iter()
        .flat_map(|t| {
            t.points.iter().map(move |p| TrajectoryRow {
                run_id: t.run_id,
                climb_index: p.climb_index,
                mean_ccv: p.mean_ccv,
                mean_metric: p.mean_metric,
                metric: p.metric,
            })
        })
        .collect();
    write_rows(&TRAJECTORIES_HEADER, &rows)
}

pub fn parse_trajectories_csv(text: &str) -> Result<Vec<TrajectoryRow>, ReportError> {
    read_rows(text, &TRAJECTORIES_HEADER)
}

pub fn summary_json(summary: &ExperimentSummary) -> Result<String, ReportError> {
    let mut s = serde_json::to_string_pretty(summary)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_summary_json(text: &str) -> Result<ExperimentSummary, ReportError> {
    Ok(serde_json::from_str(text)?)
}

/// Trajectory rows grouped by run, in first-seen order.
pub fn group_by_run(rows: &[TrajectoryRow]) -> Vec<(usize, Vec<&TrajectoryRow>)> {
    let mut groups: Vec<(usize, Vec<&TrajectoryRow>)> = Vec::new();
    for row in rows {
        match groups.last_mut() {
            Some((id, members)) if *id == row.run_id => members.push(row),
            _ => groups.push((row.run_id, vec![row])),
        }
    }
    groups
}

/// Plot-ready data; runs whose trajectory is degenerate are skipped.
pub fn plot_data(rows: &[TrajectoryRow]) -> Result<String, ReportError> {
    let first = rows.first().ok_or(ReportError::Empty)?;
    let mut out = String::new();
    writeln!(out, "# x = mean_ccv, y = mean_metric ({})", first.metric).unwrap();
    for (run_id, members) in group_by_run(rows) {
        let pairs: Vec<(f64, f64)> = members
            .iter()
            .map(|r| (r.mean_ccv, r.mean_metric))
            .collect();
        if pearson_xy(&pairs).is_err() {
            continue;
        }
        writeln!(out, "\n# run_id {run_id}").unwrap();
        for (x, y) in pairs {
            writeln!(out, "{x:?} {y:?}").unwrap();
        }
    }
    Ok(out)
}

/// Inverse of [`plot_data`]: `(run_id, points)` per block.
pub fn parse_plot_data(text: &str) -> Vec<(usize, Vec<(f64, f64)>)> {
    let mut groups = Vec::new();
    for block in text.split("\n\n") {
        let mut run_id = None;
        let mut points = Vec::new();
        for line in block.lines() {
            if let Some(id) = line.strip_prefix("# run_id ") {
                run_id = id.trim().parse().ok();
            } else if !line.starts_with('#') && !line.trim().is_empty() {
                let mut it = line.split_whitespace().map(|v| v.parse::<f64>());
                if let (Some(Ok(x)), Some(Ok(y))) = (it.next(), it.next()) {
                    points.push((x, y));
                }
            }
        }
        if let Some(id) = run_id {
            groups.push((id, points));
        }
    }
    groups
}
