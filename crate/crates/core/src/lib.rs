//! Computational toolkit for cohomogeneity one manifolds under S³×S³ and
//! related actions: group diagrams and Weyl groups, closed-form metric
//! functions along a normal geodesic with independent matrix oracles,
//! Hitchin orbifold metrics, and slope-arithmetic classification.

pub mod classify;
pub mod error;
pub mod groups;
pub mod hitchin;
pub mod numeric;
pub mod oracles;
pub mod profiles;
pub mod verify;

pub use error::{Error, Result};
