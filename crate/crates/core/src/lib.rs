//! Change-point tests for autoregressive models with heavy-tailed innovations.
//!
//! The crate detects structural breaks in the coefficients of an AR(p)
//! process without moment assumptions on the innovation law. The main test
//! profiles a self-weighted empirical-likelihood ratio over every admissible
//! split of the sample and compares the trimmed, weighted maximum against
//! Monte-Carlo quantiles of its Brownian limit functional. A CUSUM statistic
//! built from median-regression residuals is included as a baseline.
//!
//! Module map:
//! - [`series`]: AR(p) path simulation and CSV I/O,
//! - [`moment`]: self-weights, instruments and moment vectors,
//! - [`el`]: the inner Lagrange-multiplier solver and the profile over the
//!   common coefficient,
//! - [`stat`]: the trimmed/weighted test statistic and power studies,
//! - [`limit`]: limit-law matrices and Monte-Carlo critical values,
//! - [`cusum`]: the median-regression CUSUM baseline.

pub mod cusum;
pub mod el;
pub mod error;
mod linalg;
pub mod limit;
pub mod moment;
pub mod seed;
pub mod series;
pub mod stat;

pub use error::{Error, Result};
