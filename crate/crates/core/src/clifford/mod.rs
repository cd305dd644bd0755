//! Exact five-gamma algebra: standard basis, particle deformation,
//! similarity transform, Dirac reduction and the convention search.

pub mod convention;
pub mod gamma;
pub mod matrix;
pub mod reduction;
pub mod scalar;
pub mod search;
pub mod similarity;

pub use convention::{ConventionSet, Phase, Sign};
pub use gamma::{anticommutator_table, particle_gamma_set, standard_gamma_set, GammaSet, VectorPotential5};
pub use matrix::{MatrixC, ScaledMatrix};
pub use reduction::{dirac_reduction_check, ReductionReport};
pub use scalar::ExactComplex;
pub use search::{convention_search, convention_search_over, IdentityRecord, SearchReport};
pub use similarity::{similarity_transform, Similarity};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CliffordError {
    #[error("convention {convention} is inconsistent: {reason}")]
    ConventionInconsistent { convention: String, reason: String },
    #[error("(γ⁴)² ≠ −1 under convention {convention}; 1 + γ⁴ is not invertible")]
    NotInvertible { convention: String },
    #[error("momentum violates the dispersion relation (k·k − m² = {defect:e})")]
    DispersionViolated { defect: f64 },
    #[error("the fifth potential component must vanish")]
    FifthPotentialComponent,
    #[error("malformed convention id {0:?}")]
    BadConventionId(String),
}
