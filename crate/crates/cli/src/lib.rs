//! Library side of the `cohom1` command: configuration, CSV tables, figure
//! registry, SVG rendering and the command implementations.

pub mod commands;
pub mod config;
pub mod figures;
pub mod svg;
pub mod table;

pub use config::{Format, RunConfig};
pub use table::Table;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cohom1_core::Error),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("config: {0}")]
    Config(String),
    #[error("invalid range {0:?}")]
    Range(String),
    #[error("unknown figure {0}; figures are numbered 1 to 12")]
    UnknownFigure(u32),
    #[error("figure {figure} panel {panel}: {detail}")]
    Plot { figure: u32, panel: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn io_err(path: impl AsRef<std::path::Path>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.as_ref().display().to_string();
    move |source| CliError::Io { path, source }
}
