use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use cohom1::commands::{self, Emit, SampleArgs, SeriesKind};
use cohom1::config::Overrides;
use cohom1::{Format, RunConfig};
use cohom1_core::profiles::Space;
use cohom1_core::verify::Suite;

/// Invariant metrics on cohomogeneity one manifolds: sampling, verification,
/// classification and figures.
#[derive(Parser)]
#[command(name = "cohom1", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// key=value config file (grid_n, output_dir, format, tol.<suite>).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Grid points; at least 65.
    #[arg(long = "grid", global = true)]
    grid_n: Option<usize>,
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// csv, svg or both.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Tolerance override, e.g. `--tol collapse=1e-10`.
    #[arg(long = "tol", global = true, value_parser = parse_tol)]
    tolerances: Vec<(String, f64)>,
}

fn parse_tol(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected SUITE=VALUE")?;
    let v: f64 = v.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((k.trim().to_string(), v))
}

#[derive(Subcommand)]
enum Cmd {
    /// List the catalog spaces and the figure registry.
    List,
    /// Sample the metric (or inverse) functions of a space to CSV.
    Sample {
        #[arg(long)]
        space: Space,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        eps: Option<f64>,
        /// `a:b`, e.g. `0:3L` or `0:pi/3`.
        #[arg(long, default_value = "0:L")]
        range: String,
        /// metric or inverse.
        #[arg(long, default_value = "metric")]
        series: SeriesKind,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites; exits 1 on any hard failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Enumerate a classification family up to a slope bound.
    Classify {
        /// ex1a, ex1b, ex2, ex3, ex4 or all.
        #[arg(long, default_value = "all")]
        template: String,
        #[arg(long, default_value_t = 20)]
        bound: i64,
    },
    /// Hitchin orbifold metrics: curvature, sphere profile, embedding or lengths.
    Hitchin {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a CSV table as the SVG of a figure panel.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        figure: u32,
        #[arg(long, default_value_t = 1)]
        panel: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write CSV/SVG for figures into the output directory.
    Figure {
        /// Figure ids; all twelve when omitted.
        ids: Vec<u32>,
    },
}

fn config(g: &Global) -> Result<RunConfig> {
    let base = match &g.config {
        Some(p) => RunConfig::load(p).with_context(|| format!("loading {}", p.display()))?,
        None => RunConfig::default(),
    };
    let o = Overrides {
        grid_n: g.grid_n,
        output_dir: g.output_dir.clone(),
        format: g.format,
        tolerances: g.tolerances.clone(),
    };
    Ok(base.merged(&o)?)
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = config(&cli.global)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.cmd {
        Cmd::List => commands::list(&mut out)?,
        Cmd::Sample { space, p, eps, range, series, out: path } => {
            let args = SampleArgs { space, p, eps, range, kind: series, out: path };
            commands::sample(&args, &cfg, &mut out)?
        }
        Cmd::Verify { suite } => return Ok(commands::verify(suite, &cfg, &mut out)?),
        Cmd::Classify { template, bound } => {
            let ids = commands::parse_templates(&template)?;
            commands::classify(&ids, bound, &mut out)?
        }
        Cmd::Hitchin { k, emit, out: path } => commands::hitchin(k, emit, path.as_deref(), &cfg, &mut out)?,
        Cmd::Plot { input, figure, panel, out: path } => {
            commands::plot(&input, figure, panel, path.as_deref(), &mut out)?
        }
        Cmd::Figure { ids } => {
            let ids = if ids.is_empty() { (1..=12).collect() } else { ids };
            for p in commands::figure(&ids, &cfg)? {
                writeln!(out, "{}", p.display()).map_err(|e| anyhow!(e))?;
            }
        }
    }
    out.flush()?;
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
