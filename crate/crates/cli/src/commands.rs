//! Command bodies. Each writes to a caller-supplied sink so that the binary
//! and the tests share one code path.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cohom1_core::classify::{self, TemplateId};
use cohom1_core::groups::{self, DiagramParams};
use cohom1_core::profiles::{MetricProfile, Space};
use cohom1_core::verify::{self, Check, Suite, VerifyOptions};
use serde::Serialize;

use crate::figures::{self, Source};
use crate::svg::{self, PlotSpec};
use crate::{io_err, CliError, Result, RunConfig, Table};

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(io_err("<output>"))
}

/// Write `text` to `path`, or to `out` when `path` is `None` or `-`.
pub fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            fs::write(p, text).map_err(io_err(p))
        }
        _ => emit(out, text),
    }
}

fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        return Some(parse_number(num)? / den.trim().parse::<f64>().ok()?);
    }
    let lower = s.to_ascii_lowercase();
    if let Some(c) = lower.strip_suffix("pi") {
        let c = c.trim_end_matches('*');
        return Some(if c.is_empty() { 1.0 } else { c.parse::<f64>().ok()? } * PI);
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn parse_endpoint(s: &str, l: f64) -> Option<f64> {
    let s = s.trim();
    match s.strip_suffix('L') {
        Some(c) => {
            let c = c.trim_end_matches('*');
            Some(if c.is_empty() { 1.0 } else { parse_number(c)? } * l)
        }
        None => parse_number(s),
    }
}

/// Parse `a:b` where each end is a number, a multiple of `L` (`3L`, `0.5L`)
/// or of `pi` (`pi/3`).
pub fn parse_range(s: &str, l: f64) -> Result<(f64, f64)> {
    let bad = || CliError::Range(s.to_string());
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a = parse_endpoint(a, l).ok_or_else(bad)?;
    let b = parse_endpoint(b, l).ok_or_else(bad)?;
    if a < b {
        Ok((a, b))
    } else {
        Err(bad())
    }
}

fn fmt_l(l: f64) -> String {
    let n = PI / l;
    if (n - n.round()).abs() < 1e-12 {
        format!("pi/{}", n.round())
    } else {
        format!("{l}")
    }
}

/// Catalog of spaces and figures.
pub fn list(out: &mut dyn Write) -> Result<()> {
    let mut s = String::from("space\tL\tperiod\tWeyl order\tparameters\n");
    for space in Space::ALL {
        let prof = MetricProfile::new(space, None, None)?;
        let params = match (space.uses_p(), space.uses_eps()) {
            (true, true) => "p>=1 (default 10), eps>0 (default 0.5)",
            (false, true) => "eps>0 (default 0.5)",
            _ => "-",
        };
        let weyl = groups::catalog(space.name(), &DiagramParams { p: Some(prof.p), k: None, eps: None })
            .and_then(|d| groups::weyl_order(&d))
            .map_or("-".to_string(), |w| w.to_string());
        s.push_str(&format!(
            "{}\t{}\t{}L\t{}\t{}\n",
            space.name(),
            fmt_l(prof.l),
            prof.symmetry.span_in_l(),
            weyl,
            params
        ));
    }
    s.push_str("\nhitchin\tk in {3, 4, 6}\n\nfigure\tpanels\tcaption\n");
    for f in figures::all_figures() {
        let panels: Vec<String> = f.panels.iter().map(|p| format!("{} {}", p.title, p.range_label())).collect();
        s.push_str(&format!("{}\t{}\t{}\n", f.id, panels.join("; "), f.caption));
    }
    emit(out, &s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Metric,
    Inverse,
}

impl std::str::FromStr for SeriesKind {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "metric" => Ok(Self::Metric),
            "inverse" => Ok(Self::Inverse),
            _ => Err(CliError::Config(format!("unknown series kind {s:?}; use metric or inverse"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleArgs {
    pub space: Space,
    pub p: Option<i64>,
    pub eps: Option<f64>,
    pub range: String,
    pub kind: SeriesKind,
    pub out: Option<PathBuf>,
}

pub fn sample_table(args: &SampleArgs, grid_n: usize) -> Result<Table> {
    let prof = MetricProfile::new(args.space, args.p, args.eps)?;
    let (a, b) = parse_range(&args.range, prof.l)?;
    match args.kind {
        SeriesKind::Metric => figures::metric_table(&prof, a, b, grid_n),
        SeriesKind::Inverse => figures::inverse_table(&prof, a, b, grid_n),
    }
}

pub fn sample(args: &SampleArgs, cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let csv = sample_table(args, cfg.grid_n)?.to_csv()?;
    write_output(args.out.as_deref(), &csv, out)
}

#[derive(Serialize)]
struct CheckLine<'a> {
    suite: &'a str,
    name: &'a str,
    measured: f64,
    tolerance: f64,
    bound: &'a str,
    hard: bool,
    pass: bool,
}

#[derive(Serialize)]
struct Summary {
    checks: usize,
    failed_hard: usize,
    failed_soft: usize,
    pass: bool,
}

#[derive(Serialize)]
struct SummaryLine {
    summary: Summary,
}

/// Run a suite with configured tolerance overrides applied.
pub fn verify_checks(suite: Suite, cfg: &RunConfig) -> Result<Vec<Check>> {
    let checks = verify::run(suite, &VerifyOptions { grid_n: cfg.grid_n })?;
    Ok(checks
        .into_iter()
        .map(|c| match cfg.tolerances.get(c.suite.name()) {
            Some(&tol) => c.with_tolerance(tol),
            None => c,
        })
        .collect())
}

/// One JSON object per check, then a summary line. Returns whether every
/// hard check passed.
pub fn verify(suite: Suite, cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let checks = verify_checks(suite, cfg)?;
    let mut s = String::new();
    for c in &checks {
        s.push_str(&json_line(&CheckLine {
            suite: c.suite.name(),
            name: &c.name,
            measured: c.measured,
            tolerance: c.tolerance,
            bound: c.bound.name(),
            hard: c.hard,
            pass: c.pass,
        })?);
    }
    let failed_hard = checks.iter().filter(|c| c.failed_hard()).count();
    let failed_soft = checks.iter().filter(|c| !c.hard && !c.pass).count();
    let ok = failed_hard == 0;
    s.push_str(&json_line(&SummaryLine { summary: Summary { checks: checks.len(), failed_hard, failed_soft, pass: ok } })?);
    emit(out, &s)?;
    Ok(ok)
}

fn json_line<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string(v).map_err(|e| CliError::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Template ids to run: one, or all five for `all`.
pub fn parse_templates(s: &str) -> Result<Vec<TemplateId>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(TemplateId::ALL.to_vec());
    }
    Ok(vec![s.parse::<TemplateId>()?])
}

pub fn classify(templates: &[TemplateId], bound: i64, out: &mut dyn Write) -> Result<()> {
    let mut s = String::new();
    for &id in templates {
        let r = classify::enumerate(id, bound)?;
        s.push_str(&format!("template {} bound {}\n", r.template, r.bound));
        s.push_str(&format!("survivors {}\n", r.survivors.len()));
        for sv in &r.survivors {
            s.push_str(&format!("  {}\t{}\n", sv.config, sv.label));
        }
        for (ex, n) in &r.exclusions {
            s.push_str(&format!("excluded {}: {}\n", ex.tag(), n));
        }
        s.push('\n');
    }
    emit(out, &s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Curvature,
    Profile,
    Embedding,
    Lengths,
}

impl std::str::FromStr for Emit {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "curvature" => Ok(Self::Curvature),
            "profile" => Ok(Self::Profile),
            "embedding" => Ok(Self::Embedding),
            "lengths" => Ok(Self::Lengths),
            _ => Err(CliError::Config(format!(
                "unknown emit {s:?}; use curvature, profile, embedding or lengths"
            ))),
        }
    }
}

pub fn hitchin_table(k: u32, what: Emit, grid_n: usize) -> Result<Table> {
    match what {
        Emit::Curvature => figures::hitchin_curvature_table(k, grid_n),
        Emit::Profile => figures::sphere_table(k, grid_n),
        Emit::Embedding => figures::embedding_table(k, grid_n),
        Emit::Lengths => figures::hitchin_lengths(k, grid_n),
    }
}

pub fn hitchin(k: u32, what: Emit, path: Option<&Path>, cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let csv = hitchin_table(k, what, cfg.grid_n)?.to_csv()?;
    write_output(path, &csv, out)
}

fn panel_of(figure: u32, panel: usize) -> Result<figures::Panel> {
    let spec = figures::figure(figure)?;
    let n = spec.panels.len();
    if panel == 0 || panel > n {
        return Err(CliError::Plot { figure, panel, detail: format!("panels are numbered 1 to {n}") });
    }
    Ok(spec.panels[panel - 1].clone())
}

/// Render one figure panel from a table.
pub fn render_panel(figure: u32, panel: usize, table: &Table) -> Result<String> {
    let p = panel_of(figure, panel)?;
    let l = p.l()?;
    let title = format!("Figure {figure}: {} on {}", p.title, p.range_label());
    let spec = PlotSpec {
        title: &title,
        x: p.x,
        series: &p.series,
        l,
        x_range: l.map(|l| (0.0, p.span * l)),
        y_clip: p.y_clip,
        mirror: matches!(p.source, Source::Embedding { .. }),
    };
    svg::render(&spec, table).map_err(|detail| CliError::Plot { figure, panel, detail })
}

pub fn plot(input: &Path, figure: u32, panel: usize, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(input).map_err(io_err(input))?;
    let table = Table::from_csv(&text)?;
    let svg = render_panel(figure, panel, &table)?;
    write_output(path, &svg, out)
}

/// Write every panel of the given figures into `output_dir` as
/// `figN_M.csv` / `figN_M.svg`. Returns the files written, in order.
pub fn figure(ids: &[u32], cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let dir = &cfg.output_dir;
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();
    for &id in ids {
        let spec = figures::figure(id)?;
        for (j, p) in spec.panels.iter().enumerate() {
            let table = p.generate(cfg.grid_n)?;
            let stem = format!("fig{id}_{}", j + 1);
            if cfg.format.csv() {
                let path = dir.join(format!("{stem}.csv"));
                fs::write(&path, table.to_csv()?).map_err(io_err(&path))?;
                written.push(path);
            }
            if cfg.format.svg() {
                let path = dir.join(format!("{stem}.svg"));
                fs::write(&path, render_panel(id, j + 1, &table)?).map_err(io_err(&path))?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
