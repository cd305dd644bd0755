//! Check lists for each suite. Every function is deterministic in its inputs.

pub mod clifford;
pub mod conformal;
pub mod fivegeom;
pub mod spinormap;

/// Relation tags for checks outside the Clifford module.
pub mod tags {
    pub const CONFORMAL_SCALAR: &str = "conformal-scalar-identity";
    pub const CURVATURE: &str = "christoffel-curvature";
    pub const RICCI_SPLIT: &str = "conformal-ricci-split";
    pub const FIVE_METRIC: &str = "five-metric-standard-form";
    pub const FIVE_METRIC_FACTORS: &str = "five-metric-conformal-factors";
    pub const GEODESICS: &str = "preferred-geodesics";
    pub const FIELD_FREE: &str = "field-free-geodesics";
    pub const KLEIN_GORDON: &str = "klein-gordon-mass";
    pub const COUNT: &str = "conformal-count-invariance";
    pub const SPINOR_MAP: &str = "spinor-coordinate-map";
    pub const PULLBACK: &str = "spinor-pullback-metric";
    pub const FACTORIZATION: &str = "eight-dim-dalembertian";
    pub const STEREO: &str = "stereographic-double-angle";
}
