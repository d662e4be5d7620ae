//! Command-line front end: metric evaluation, LS-HWF search, the trajectory
//! experiment and plot-data export.
//!
//! Exit codes: 0 success, 1 invalid input or configuration, 2 completed but
//! with an unreliable result (more than half the runs degenerate).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use sboxmetrics_core::report;
use sboxmetrics_core::sbox::MAX_BITS;
use sboxmetrics_core::{
    ccv, ls_hwf, mto, mto_beta_zero, parse_sbox, rto, rto_beta_zero, run_experiment,
    transparency_order, ExperimentConfig, Metric, RngStream, SBox,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNRELIABLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sboxmetrics",
    version,
    about = "S-box side-channel metrics and LS-HWF trajectories"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Metrics `cmd_metrics` can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricName {
    Ccv,
    To,
    Mto0,
    Rto0,
    Mto,
    Rto,
}

impl MetricName {
    pub fn name(self) -> &'static str {
        match self {
            MetricName::Ccv => "ccv",
            MetricName::To => "to",
            MetricName::Mto0 => "mto0",
            MetricName::Rto0 => "rto0",
            MetricName::Mto => "mto",
            MetricName::Rto => "rto",
        }
    }

    pub fn evaluate(self, sbox: &SBox) -> f64 {
        match self {
            MetricName::Ccv => ccv(sbox),
            MetricName::To => transparency_order(sbox),
            MetricName::Mto0 => mto_beta_zero(sbox),
            MetricName::Rto0 => rto_beta_zero(sbox),
            MetricName::Mto => mto(sbox),
            MetricName::Rto => rto(sbox),
        }
    }
}

impl FromStr for MetricName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "ccv" => MetricName::Ccv,
            "to" => MetricName::To,
            "mto0" => MetricName::Mto0,
            "rto0" => MetricName::Rto0,
            "mto" => MetricName::Mto,
            "rto" => MetricName::Rto,
            other => return Err(format!("unknown metric {other:?}")),
        })
    }
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse::<Metric>().map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate metrics of an S-box file.
    Metrics {
        #[arg(long)]
        sbox: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_delimiter = ',', default_value = "ccv,to,mto0,rto0")]
        metrics: Vec<MetricName>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run one LS-HWF search.
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: u64,
        /// Write every accepted climb as CSV.
        #[arg(long)]
        emit_climbs: Option<PathBuf>,
        /// Final S-box destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the CCV trajectory experiment.
    Experiment {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_metric)]
        metric: Metric,
        #[arg(long, default_value_t = 30)]
        runs: usize,
        /// Defaults to 30, or 1 for rto0.
        #[arg(long)]
        sample_size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Convert an experiment's trajectories.csv to plot data.
    ExportPlot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            EXIT_INVALID
        }
    }
}

pub fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Metrics {
            sbox,
            n,
            m,
            metrics,
            format,
        } => {
            let out = cmd_metrics(&sbox, n, m, &metrics, format)?;
            print!("{out}");
            Ok(EXIT_OK)
        }
        Command::Search {
            n,
            seed,
            emit_climbs,
            out,
        } => cmd_search(n, seed, emit_climbs.as_deref(), out.as_deref()),
        Command::Experiment {
            n,
            metric,
            runs,
            sample_size,
            seed,
            out_dir,
        } => {
            let config = ExperimentConfig {
                n,
                metric,
                runs,
                sample_size: sample_size.unwrap_or(metric.default_sample_size()),
                master_seed: seed,
            };
            cmd_experiment(&config, &out_dir)
        }
        Command::ExportPlot { input, out } => cmd_export_plot(&input, &out),
    }
}

/// Renders the requested metrics of the S-box in `path`.
pub fn cmd_metrics(
    path: &Path,
    n: u32,
    m: u32,
    metrics: &[MetricName],
    format: Format,
) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let sbox = parse_sbox(&text, n, m).with_context(|| format!("parsing {}", path.display()))?;
    let values: Vec<(MetricName, f64)> = metrics.iter().map(|&k| (k, k.evaluate(&sbox))).collect();
    Ok(match format {
        Format::Json => {
            let mut obj = Map::new();
            for (k, v) in values {
                obj.insert(k.name().to_string(), Value::from(v));
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(obj))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("metric,value\n");
            for (k, v) in values {
                s.push_str(&format!("{},{v:?}\n", k.name()));
            }
            s
        }
    })
}

fn check_n(n: u32) -> Result<()> {
    ensure!(
        (2..=MAX_BITS).contains(&n),
        "--n {n} outside the supported range 2..={MAX_BITS}"
    );
    Ok(())
}

/// Runs LS-HWF from stream `(seed, 0)`, the same stream as run 0 of an
/// experiment with that seed.
pub fn cmd_search(n: u32, seed: u64, climbs: Option<&Path>, out: Option<&Path>) -> Result<i32> {
    check_n(n)?;
    let result = ls_hwf(n, &RngStream::new(seed).child(0), |_| {})?;
    if let Some(path) = climbs {
        write(path, &report::climbs_csv(0, &result)?)?;
    }
    match out {
        Some(path) => write(path, &result.best.to_text())?,
        None => print!("{}", result.best.to_text()),
    }
    Ok(EXIT_OK)
}

pub fn cmd_experiment(config: &ExperimentConfig, out_dir: &Path) -> Result<i32> {
    config.validate()?;
    let rep = run_experiment(config)?;
    let csv = report::trajectories_csv(&rep.trajectories)?;
    let json = report::summary_json(&rep.summary)?;
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    write(&out_dir.join("trajectories.csv"), &csv)?;
    write(&out_dir.join("summary.json"), &json)?;
    let s = &rep.summary;
    if s.is_unreliable() {
        eprintln!(
            "warning: {} of {} runs degenerate; summary unreliable",
            s.degenerate_runs, config.runs
        );
        return Ok(EXIT_UNRELIABLE);
    }
    Ok(EXIT_OK)
}

pub fn cmd_export_plot(dir: &Path, out: &Path) -> Result<i32> {
    let path = dir.join("trajectories.csv");
    if !path.is_file() {
        bail!("{} not found", path.display());
    }
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let rows = report::parse_trajectories_csv(&text)?;
    write(out, &report::plot_data(&rows)?)?;
    Ok(EXIT_OK)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
