//! Symbolic scalar expressions and tensor calculus on small metrics.
//!
//! Expressions normalize to a canonical rational-function form (see
//! [`ratfun`]), so an expression is zero exactly when its normal form is.

pub mod atom;
pub mod conformal;
pub mod curvature;
pub mod expr;
pub mod fd;
pub mod metric;
pub mod poly;
pub mod ratfun;
pub mod sample;
pub mod sexpr;
pub mod suite;

pub use atom::{FieldSym, MAX_DIM};
pub use conformal::{conformal_ricci_split, conformal_scalar_identity, dalembertian, IdentityReport, RicciSplit};
pub use curvature::{christoffel, curvature, Connection, CurvatureBundle};
pub use expr::{FieldValues, NoFields, SymExpr};
pub use metric::MetricTensor;
pub use ratfun::RatFun;
pub use sample::{NumericEnv, SampleField};
pub use sexpr::{parse_sexpr, to_sexpr};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SymError {
    #[error("division by an expression that normalizes to zero")]
    DivisionByZero,
    #[error("fractional power of a value that is not a positive field monomial: {0}")]
    FractionalPower(String),
    #[error("argument of sin/cos/exp is not linear in the coordinates: {0}")]
    NonLinearArgument(String),
    #[error("coordinate index {0} out of range")]
    CoordinateOutOfRange(usize),
    #[error("no numeric value for field {0}")]
    UnknownField(String),
    #[error("s-expression parse error: {0}")]
    Parse(String),
    #[error("non-finite numeric input {0}")]
    NonFinite(f64),
    #[error("metric is singular")]
    SingularMetric,
    #[error("metric dimension {0} outside 2..=8")]
    BadDimension(usize),
    #[error("metric components ({0},{1}) and ({1},{0}) differ")]
    NotSymmetric(usize, usize),
}
