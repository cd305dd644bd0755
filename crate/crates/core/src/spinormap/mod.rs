//! The quadratic map `x^m = ½ ξ̄^A γ^m_{AB} ξ^B` from C⁴ to five real
//! coordinates, its derivative, pullback and diagnostics.

pub mod map;
pub mod probe;
pub mod stereo;

pub use map::{
    map_jacobian, map_jacobian_with, pullback_metric, pullback_metric_with, reality_scan, spinor_to_x, spinor_to_x_with,
    vanishing_coordinates, MapImage, MapJacobian, Pullback, Reading, RealityScan, SpinorPoint,
};
pub use probe::{dalembert_factorization_probe, dalembert_factorization_probe_with, ProbeReport, ProbeStatus, SolutionId};
pub use stereo::{stereographic_double_angle, stereographic_sweep, StereoRow};

/// Tolerance on `imag_norm` below which an image coordinate counts as real.
pub const REALITY_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SpinorError {
    #[error("unknown solution id {0:?}; expected constant, harmonic_xy or plane_wave")]
    UnknownSolution(String),
    #[error("angle {0}° outside the open interval (0°, 180°)")]
    DomainError(f64),
}
