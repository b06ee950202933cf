//! Exact rational linear algebra, cones and fans.
//!
//! Nothing in here touches floating point. Cones are kept as generator sets
//! and every membership question is answered by an exact simplex run.

mod cone;
mod fan;
pub mod lp;
mod matrix;
mod rational;
mod vector;

pub use cone::Cone;
pub use fan::{cone_locate, fan_validate, Fan};
pub use matrix::{rank, RatMatrix};
pub use rational::{parse_rat, rat, ratio, ParseRatError, Rat};
pub use vector::{IntVec, RatVec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix rows have unequal lengths")]
    Ragged,
}
