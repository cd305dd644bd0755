//! Five-dimensional metric assembly, preferred geodesics, the Klein–Gordon
//! reduction and the conformal count invariance.
//!
//! Coordinates are `x⁰…x³` for space-time and `x⁴` for the fifth direction.

pub mod count;
pub mod geodesic;
pub mod klein_gordon;
pub mod metric5;

pub use count::{conformal_count_invariance, CountResult, CountScenario};
pub use geodesic::{integrate_geodesic, preferred_geodesic_field, GeodesicState, Normalization, VelocityField};
pub use klein_gordon::{klein_gordon_check, KleinGordonReport};
pub use metric5::{assemble_metric, minkowski, FiveMetric};

use crate::symtensor::SymError;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum GeomError {
    #[error(transparent)]
    Symbolic(#[from] SymError),
    #[error("non-finite value at {point:?}: {reason}")]
    EvaluationDomain { point: Vec<f64>, reason: String },
    #[error("component exceeded 1e12 at step {step}")]
    StepLimit { step: usize },
    #[error("step size must be positive and at least one step requested")]
    InvalidStep,
    #[error("invalid count scenario: {0}")]
    InvalidScenario(String),
}
