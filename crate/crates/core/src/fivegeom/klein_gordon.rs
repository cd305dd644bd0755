//! Plane waves `exp(i(k·x + mτ))` under the five-dimensional d'Alembertian.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::symtensor::conformal::{dalembertian_rat, mostly_minus};
use crate::symtensor::{NoFields, SymError, SymExpr};

use super::GeomError;

pub const KG_GRID_POINTS: usize = 16;
const KG_GRID_SEED: u64 = 0x6b67_0010;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KleinGordonReport {
    pub k: [f64; 4],
    pub m: f64,
    /// `max |□Ψ|` over the grid.
    pub residual: f64,
    /// `max |Ψ|` over the grid.
    pub psi_max: f64,
    /// `|m² − k·k|` with `k·k = k₀² − k₁² − k₂² − k₃²`.
    pub dispersion_defect: f64,
}

/// Builds `Ψ` symbolically, applies `□` with signature `(+,−,−,−,−)` and
/// evaluates the result on a fixed grid in the unit 5-cube.
pub fn klein_gordon_check(k: [f64; 4], m: f64) -> Result<KleinGordonReport, GeomError> {
    let exact = |v: f64| SymExpr::from_f64(v).ok_or_else(|| SymError::NonFinite(v));
    let mut phase = vec![exact(m)? * SymExpr::coord(4)];
    for (i, &ki) in k.iter().enumerate() {
        phase.push(exact(ki)? * SymExpr::coord(i));
    }
    let psi = (SymExpr::i() * SymExpr::sum(phase)).exp();
    let box_psi = dalembertian_rat(&psi.to_ratfun()?, &mostly_minus(5));
    let psi_r = psi.to_ratfun()?;

    let mut rng = ChaCha8Rng::seed_from_u64(KG_GRID_SEED);
    let (mut residual, mut psi_max) = (0.0f64, 0.0f64);
    for _ in 0..KG_GRID_POINTS {
        let x: Vec<f64> = (0..5).map(|_| rng.gen_range(0.0..1.0)).collect();
        residual = residual.max(box_psi.eval(&NoFields, &x)?.norm());
        psi_max = psi_max.max(psi_r.eval(&NoFields, &x)?.norm());
    }
    let kk = k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3];
    Ok(KleinGordonReport { k, m, residual, psi_max, dispersion_defect: (m * m - kk).abs() })
}
