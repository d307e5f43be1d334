//! Error taxonomy shared by all modules.
//!
//! Every failure carries the originating module and operation so a batch
//! runner can map it onto an exit class without string matching:
//! accuracy failures keep the best available estimate, blow-ups keep the last
//! finite time and the partial trajectory.

use crate::solver::Trajectory;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Shape/metadata mismatch: wrong lengths, mismatched grids, wrong space tag.
    #[error("structural error in {module}::{operation}: {message}")]
    Structural {
        module: &'static str,
        operation: &'static str,
        message: String,
    },

    /// Inputs outside the mathematical domain of the operation.
    #[error("domain error in {module}::{operation}: {message}")]
    Domain {
        module: &'static str,
        operation: &'static str,
        message: String,
    },

    /// A requested index/band/exponent lies outside the resolvable range.
    #[error("range error in {module}::{operation}: {message}")]
    Range {
        module: &'static str,
        operation: &'static str,
        message: String,
    },

    /// Quadrature or iteration failed to reach its tolerance; `best_estimate`
    /// is the value reached when the budget ran out.
    #[error("accuracy error in {module}::{operation}: {message} (best estimate {best_estimate:e})")]
    Accuracy {
        module: &'static str,
        operation: &'static str,
        message: String,
        best_estimate: f64,
    },

    /// Solution norm exceeded the blow-up threshold or became non-finite.
    #[error("blow-up at t = {last_finite_time}: {message}")]
    BlowUp {
        last_finite_time: f64,
        message: String,
        partial: Option<Box<Trajectory>>,
    },

    /// Fixed-point iteration stopped contracting.
    #[error("contraction failure in {module}::{operation}: {message}")]
    ContractionFailure {
        module: &'static str,
        operation: &'static str,
        message: String,
    },

    /// A contour or deformation region touches a branch ray / singularity.
    #[error("geometry error in {module}::{operation}: {message}")]
    Geometry {
        module: &'static str,
        operation: &'static str,
        message: String,
    },

    /// Invalid run configuration (reserved for front-ends).
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn structural(module: &'static str, operation: &'static str, message: impl Into<String>) -> Self {
        Error::Structural { module, operation, message: message.into() }
    }
    pub fn domain(module: &'static str, operation: &'static str, message: impl Into<String>) -> Self {
        Error::Domain { module, operation, message: message.into() }
    }
    pub fn range(module: &'static str, operation: &'static str, message: impl Into<String>) -> Self {
        Error::Range { module, operation, message: message.into() }
    }
    pub fn accuracy(
        module: &'static str,
        operation: &'static str,
        message: impl Into<String>,
        best_estimate: f64,
    ) -> Self {
        Error::Accuracy { module, operation, message: message.into(), best_estimate }
    }
    pub fn geometry(module: &'static str, operation: &'static str, message: impl Into<String>) -> Self {
        Error::Geometry { module, operation, message: message.into() }
    }
}
