//! Numeric check that plane-wave Dirac solutions, rotated by `S` and given a
//! fifth-coordinate phase, solve the massless five-dimensional equation.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gamma::GammaSet;
use super::matrix::N;
use super::similarity::similarity_transform;
use super::CliffordError;

pub type Spinor = [Complex64; N];
type CMat = [[Complex64; N]; N];

pub const DISPERSION_TOL: f64 = 1e-12;
pub const REDUCTION_TOL: f64 = 1e-10;
const GRID_SEED: u64 = 0x5eed_0019;
const GRID_POINTS: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub convention: String,
    pub momentum: [f64; 4],
    pub mass: f64,
    /// Largest `|γ^m ∂_m Ψ|` over the sample grid.
    pub max_residual: f64,
    /// `|Ψ|`, constant over the grid.
    pub psi_norm: f64,
    pub points: usize,
}

impl ReductionReport {
    pub fn passes(&self) -> bool {
        self.max_residual < REDUCTION_TOL
    }
}

/// Sixteen vertices of the unit 5-cube, drawn with a fixed seed.
pub fn lattice_grid() -> Vec<[f64; 5]> {
    let mut vertices: Vec<[f64; 5]> = (0..32u32)
        .map(|bits| std::array::from_fn(|i| ((bits >> i) & 1) as f64))
        .collect();
    vertices.shuffle(&mut ChaCha8Rng::seed_from_u64(GRID_SEED));
    vertices.truncate(GRID_POINTS);
    vertices
}

fn mat_vec(m: &CMat, v: &Spinor) -> Spinor {
    std::array::from_fn(|i| (0..N).map(|j| m[i][j] * v[j]).sum())
}

fn norm(v: &Spinor) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Unit spinor `u` with `γ^μ k_μ u = m u`, built as `(K + m)e_j` for the
/// basis vector giving the largest result.
pub fn plane_wave_spinor(gs: &GammaSet, k: &[f64; 4], m: f64) -> Spinor {
    let gammas: Vec<CMat> = gs.gammas.iter().map(|g| g.to_c64()).collect();
    let mut kslash: CMat = [[Complex64::new(0.0, 0.0); N]; N];
    for mu in 0..4 {
        for i in 0..N {
            for j in 0..N {
                kslash[i][j] += gammas[mu][i][j] * k[mu];
            }
        }
    }
    let mut best: Spinor = [Complex64::new(0.0, 0.0); N];
    for j in 0..N {
        let cand: Spinor = std::array::from_fn(|i| kslash[i][j] + if i == j { Complex64::new(m, 0.0) } else { Complex64::new(0.0, 0.0) });
        if norm(&cand) > norm(&best) {
            best = cand;
        }
    }
    let n = norm(&best);
    best.map(|z| z / n)
}

pub fn dispersion_defect(gs: &GammaSet, k: &[f64; 4], m: f64) -> f64 {
    let kk: f64 = (0..4).map(|mu| gs.flat_metric[mu] as f64 * k[mu] * k[mu]).sum();
    kk - m * m
}

pub fn dirac_reduction_check(gs: &GammaSet, k: [f64; 4], m: f64) -> Result<ReductionReport, CliffordError> {
    let defect = dispersion_defect(gs, &k, m);
    if defect.abs() > DISPERSION_TOL * (1.0 + m * m) {
        return Err(CliffordError::DispersionViolated { defect });
    }
    let sim = similarity_transform(gs)?;
    let s = sim.s.to_c64();
    let u = plane_wave_spinor(gs, &k, m);
    let su = mat_vec(&s, &u);
    let phase_sign = gs.convention.mass_phase_sign.as_f64();
    let gammas: Vec<CMat> = gs.gammas.iter().map(|g| g.to_c64()).collect();

    // ∂_μΨ = −ik_μΨ, ∂_4Ψ = i·s·m·Ψ
    let mut op: CMat = [[Complex64::new(0.0, 0.0); N]; N];
    let i = Complex64::new(0.0, 1.0);
    for mu in 0..4 {
        for a in 0..N {
            for b in 0..N {
                op[a][b] += gammas[mu][a][b] * (-i * k[mu]);
            }
        }
    }
    for a in 0..N {
        for b in 0..N {
            op[a][b] += gammas[4][a][b] * (i * phase_sign * m);
        }
    }

    let grid = lattice_grid();
    let mut max_residual: f64 = 0.0;
    let mut psi_norm: f64 = 0.0;
    for x in &grid {
        let kx: f64 = (0..4).map(|mu| k[mu] * x[mu]).sum();
        let phase = Complex64::from_polar(1.0, -kx + phase_sign * m * x[4]);
        let psi: Spinor = su.map(|z| z * phase);
        psi_norm = psi_norm.max(norm(&psi));
        max_residual = max_residual.max(norm(&mat_vec(&op, &psi)));
    }
    Ok(ReductionReport {
        convention: gs.convention.id(),
        momentum: k,
        mass: m,
        max_residual,
        psi_norm,
        points: grid.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::convention::{ConventionSet, Sign};
    use crate::clifford::gamma::standard_gamma_set;

    fn gs(mass_sign: Sign) -> GammaSet {
        let mut c = ConventionSet::standard();
        c.mass_phase_sign = mass_sign;
        standard_gamma_set(c).unwrap()
    }

    #[test]
    fn rest_frame_solves_reduced_equation() {
        let r = dirac_reduction_check(&gs(Sign::Minus), [1.0, 0.0, 0.0, 0.0], 1.0).unwrap();
        assert!(r.max_residual < 1e-10, "{}", r.max_residual);
        assert_eq!(r.points, 16);
    }

    #[test]
    fn massless_case() {
        let r = dirac_reduction_check(&gs(Sign::Minus), [1.0, 0.0, 0.0, 1.0], 0.0).unwrap();
        assert!(r.max_residual < 1e-10);
    }

    #[test]
    fn wrong_phase_sign_leaves_two_m() {
        // residual = 2m|γ⁴Sψ| = 2m for unit ψ, since S and γ⁴ are unitary
        let m = 1.5;
        let r = dirac_reduction_check(&gs(Sign::Plus), [m, 0.0, 0.0, 0.0], m).unwrap();
        assert!((r.max_residual - 2.0 * m * r.psi_norm).abs() < 1e-12);
        assert!((r.psi_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dispersion_enforced() {
        assert!(matches!(
            dirac_reduction_check(&gs(Sign::Minus), [2.0, 0.0, 0.0, 0.0], 1.0),
            Err(CliffordError::DispersionViolated { .. })
        ));
    }

    #[test]
    fn spinor_solves_momentum_space_equation() {
        let g = gs(Sign::Minus);
        let k = [1.25, 0.75, 0.0, 0.0];
        let u = plane_wave_spinor(&g, &k, 1.0);
        let gm: Vec<CMat> = g.gammas.iter().map(|x| x.to_c64()).collect();
        let mut ku: Spinor = [Complex64::new(0.0, 0.0); N];
        for mu in 0..4 {
            let t = mat_vec(&gm[mu], &u);
            for a in 0..N {
                ku[a] += t[a] * k[mu];
            }
        }
        for a in 0..N {
            assert!((ku[a] - u[a]).norm() < 1e-14);
        }
    }

    #[test]
    fn grid_is_fixed() {
        assert_eq!(lattice_grid(), lattice_grid());
        assert_eq!(lattice_grid().len(), 16);
    }
}
