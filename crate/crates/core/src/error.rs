use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ill-formed diagram: {0}")]
    IllFormed(String),
    #[error("singular block: index {index} at t = {t} (det = {det:e})")]
    SingularBlock { index: usize, t: f64, det: f64 },
    #[error("seam mismatch at t = {t}: {detail}")]
    SeamMismatch { t: f64, detail: String },
    #[error("quadrature did not converge on [{a}, {b}] (estimated error {err:e})")]
    Quadrature { a: f64, b: f64, err: f64 },
    #[error("embedding obstruction: |h'| = {max_slope} > 1 on [{t0}, {t1}]")]
    Embedding { t0: f64, t1: f64, max_slope: f64 },
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
