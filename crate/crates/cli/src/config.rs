//! Run configuration from flags and an optional `key = value` file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cohom1_core::verify::Suite;

use crate::{io_err, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Both,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "both" => Ok(Format::Both),
            _ => Err(CliError::Config(format!("format {s:?}; expected csv, svg or both"))),
        }
    }
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
    pub fn svg(self) -> bool {
        matches!(self, Format::Svg | Format::Both)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid_n: usize,
    /// Suite name → tolerance replacing that suite's upper-bound tolerances.
    pub tolerances: BTreeMap<String, f64>,
    pub output_dir: PathBuf,
    pub format: Format,
}

pub const DEFAULT_GRID: usize = 1001;
pub const MIN_GRID: usize = 65;

impl Default for RunConfig {
    fn default() -> Self {
        Self { grid_n: DEFAULT_GRID, tolerances: BTreeMap::new(), output_dir: PathBuf::from("."), format: Format::Both }
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub grid_n: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub tolerances: Vec<(String, f64)>,
}

impl RunConfig {
    /// Parse `key = value` lines; `#` starts a comment. Keys: `grid_n`,
    /// `output_dir`, `format`, `tol.<suite>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = |what: &str| CliError::Config(format!("line {}: {what} {v:?}", no + 1));
            match k {
                "grid_n" => cfg.grid_n = v.parse().map_err(|_| bad("grid_n"))?,
                "output_dir" => cfg.output_dir = PathBuf::from(v),
                "format" => cfg.format = v.parse()?,
                _ => match k.strip_prefix("tol.") {
                    Some(name) if !name.is_empty() => {
                        cfg.tolerances.insert(name.to_string(), v.parse().map_err(|_| bad("tolerance"))?);
                    }
                    _ => return Err(CliError::Config(format!("line {}: unknown key {k:?}", no + 1))),
                },
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::parse(&text)
    }

    /// Flags win over file values.
    pub fn merged(mut self, o: &Overrides) -> Result<Self> {
        if let Some(n) = o.grid_n {
            self.grid_n = n;
        }
        if let Some(d) = &o.output_dir {
            self.output_dir = d.clone();
        }
        if let Some(f) = o.format {
            self.format = f;
        }
        for (k, v) in &o.tolerances {
            self.tolerances.insert(k.clone(), *v);
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_n < MIN_GRID {
            return Err(CliError::Config(format!("grid_n = {} must be >= {MIN_GRID}", self.grid_n)));
        }
        for (k, v) in &self.tolerances {
            if !matches!(k.parse::<Suite>(), Ok(s) if s != Suite::All) {
                return Err(CliError::Config(format!("tolerance for unknown suite {k:?}")));
            }
            if !(*v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("tolerance {k} = {v} must be positive")));
            }
        }
        Ok(())
    }
}
