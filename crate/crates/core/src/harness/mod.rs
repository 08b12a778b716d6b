//! Drivers that tie the pieces together: the recursion-versus-formula
//! crosscheck, the brute-force Hurwitz oracle, the fixture corpus and the
//! identity checks.

pub mod checks;
mod crosscheck;
pub mod fit;
mod fixtures;
mod oracle;

pub use checks::CheckReport;
pub use crosscheck::{crosscheck, crosscheck_pairs, stable_pairs, CrosscheckEntry, CrosscheckReport};
pub use fixtures::{fixtures, run_fixtures, worked_examples, FixtureEntry, FixtureReport, FixtureResult};
pub use oracle::{cut_join_oracle, ORACLE_MAX_DEGREE};

use crate::bridge::BridgeError;
use crate::curve::CurveError;
use crate::intersect::IntersectError;
use crate::toprec::TrError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Recursion(#[from] TrError),
    #[error(transparent)]
    Intersect(#[from] IntersectError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("degree {d} exceeds the oracle limit {max}")]
    OracleTooLarge { d: usize, max: usize },
}
