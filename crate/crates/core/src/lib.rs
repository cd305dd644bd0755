//! Desk-scale verification of five-dimensional geometric identities: exact
//! Clifford algebra, symbolic curvature, five-metric geodesics and the
//! spinor coordinate map.

pub mod clifford;
pub mod fivegeom;
pub mod spinormap;
pub mod symtensor;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
