use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::GammaSet;

use super::REALITY_TOL;

type C4 = [[Complex64; 4]; 4];

/// A point of C⁴ as real and imaginary parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpinorPoint {
    pub xi_re: [f64; 4],
    pub xi_im: [f64; 4],
}

impl SpinorPoint {
    pub const ZERO: SpinorPoint = SpinorPoint { xi_re: [0.0; 4], xi_im: [0.0; 4] };

    pub fn from_complex(xi: [Complex64; 4]) -> Self {
        Self { xi_re: xi.map(|z| z.re), xi_im: xi.map(|z| z.im) }
    }

    pub fn complex(&self) -> [Complex64; 4] {
        std::array::from_fn(|a| Complex64::new(self.xi_re[a], self.xi_im[a]))
    }

    /// `(ξ_r, ξ_i)` as one real 8-vector.
    pub fn as_real8(&self) -> [f64; 8] {
        std::array::from_fn(|k| if k < 4 { self.xi_re[k] } else { self.xi_im[k - 4] })
    }

    pub fn from_real8(v: &[f64; 8]) -> Self {
        Self { xi_re: std::array::from_fn(|a| v[a]), xi_im: std::array::from_fn(|a| v[a + 4]) }
    }

    pub fn rotate_phase(&self, phi: f64) -> Self {
        let u = Complex64::from_polar(1.0, phi);
        Self::from_complex(self.complex().map(|z| z * u))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { xi_re: self.xi_re.map(|v| v * c), xi_im: self.xi_im.map(|v| v * c) }
    }

    /// Tangent of the phase orbit, `iξ`, in real coordinates.
    pub fn phase_direction(&self) -> [f64; 8] {
        std::array::from_fn(|k| if k < 4 { -self.xi_im[k] } else { self.xi_re[k - 4] })
    }

    /// Components uniform in `[−1, 1]`.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        Self { xi_re: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)), xi_im: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)) }
    }

    pub fn is_finite(&self) -> bool {
        self.xi_re.iter().chain(&self.xi_im).all(|v| v.is_finite())
    }
}

/// How `ξ̄` is read: plain complex conjugation, or the Dirac adjoint `ξ†γ⁰`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    #[default]
    Plain,
    Adjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MapImage {
    pub x: [Complex64; 5],
    pub x_real: [f64; 5],
    /// `max_m |Im x^m|`.
    pub imag_norm: f64,
}

impl MapImage {
    pub fn is_real(&self) -> bool {
        self.imag_norm < REALITY_TOL
    }
}

fn mul(a: &C4, b: &C4) -> C4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

/// The bilinear-form matrices `M^m` with `x^m = ½ ξ† M^m ξ`.
fn forms(gs: &GammaSet, reading: Reading) -> [C4; 5] {
    let g: [C4; 5] = std::array::from_fn(|m| gs.gammas[m].to_c64());
    match reading {
        Reading::Plain => g,
        Reading::Adjoint => std::array::from_fn(|m| mul(&g[0], &g[m])),
    }
}

fn quadratic(m: &C4, xi: &[Complex64; 4]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..4 {
        for b in 0..4 {
            acc += xi[a].conj() * m[a][b] * xi[b];
        }
    }
    acc * 0.5
}

pub fn spinor_to_x(gs: &GammaSet, p: &SpinorPoint) -> MapImage {
    spinor_to_x_with(gs, p, Reading::Plain)
}

pub fn spinor_to_x_with(gs: &GammaSet, p: &SpinorPoint, reading: Reading) -> MapImage {
    let xi = p.complex();
    let f = forms(gs, reading);
    let x: [Complex64; 5] = std::array::from_fn(|m| quadratic(&f[m], &xi));
    MapImage { x, x_real: x.map(|z| z.re), imag_norm: x.iter().map(|z| z.im.abs()).fold(0.0, f64::max) }
}

/// `∂x^m_real / ∂(ξ_r, ξ_i)`; row `m` is `[Re(Hξ), Im(Hξ)]` with `H = (M + M†)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MapJacobian {
    pub j: [[f64; 8]; 5],
}

impl MapJacobian {
    pub fn apply(&self, v: &[f64; 8]) -> [f64; 5] {
        std::array::from_fn(|m| (0..8).map(|k| self.j[m][k] * v[k]).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.j.iter().flatten().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

pub(crate) fn hermitian_part(m: &C4) -> C4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (m[i][j] + m[j][i].conj()) * 0.5))
}

pub(crate) fn hermitian_parts(gs: &GammaSet, reading: Reading) -> [C4; 5] {
    forms(gs, reading).map(|m| hermitian_part(&m))
}

pub fn map_jacobian(gs: &GammaSet, p: &SpinorPoint) -> MapJacobian {
    map_jacobian_with(gs, p, Reading::Plain)
}

pub fn map_jacobian_with(gs: &GammaSet, p: &SpinorPoint, reading: Reading) -> MapJacobian {
    let xi = p.complex();
    let h = hermitian_parts(gs, reading);
    let mut j = [[0.0; 8]; 5];
    for m in 0..5 {
        for a in 0..4 {
            let hx: Complex64 = (0..4).map(|b| h[m][a][b] * xi[b]).sum();
            j[m][a] = hx.re;
            j[m][a + 4] = hx.im;
        }
    }
    MapJacobian { j }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Pullback {
    pub matrix: [[f64; 8]; 8],
    pub singular_values: Vec<f64>,
    /// Singular values above `1e−10·max(1, σ_max)`.
    pub rank: usize,
}

pub const RANK_TOL: f64 = 1e-10;

/// `Jᵀ g5 J` at `p`.
pub fn pullback_metric(gs: &GammaSet, p: &SpinorPoint, g5: &[[f64; 5]; 5]) -> Pullback {
    pullback_metric_with(gs, p, g5, Reading::Plain)
}

pub fn pullback_metric_with(gs: &GammaSet, p: &SpinorPoint, g5: &[[f64; 5]; 5], reading: Reading) -> Pullback {
    let jac = map_jacobian_with(gs, p, reading);
    let j = SMatrix::<f64, 5, 8>::from_fn(|m, k| jac.j[m][k]);
    let g = SMatrix::<f64, 5, 5>::from_fn(|a, b| g5[a][b]);
    let pb = j.transpose() * g * j;
    let sv = pb.svd(false, false).singular_values;
    let scale = sv.max().max(1.0);
    let mut singular_values: Vec<f64> = sv.iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    Pullback {
        matrix: std::array::from_fn(|r| std::array::from_fn(|c| pb[(r, c)])),
        rank: singular_values.iter().filter(|&&s| s > RANK_TOL * scale).count(),
        singular_values,
    }
}

impl Pullback {
    pub fn apply(&self, v: &[f64; 8]) -> [f64; 8] {
        let m = SMatrix::<f64, 8, 8>::from_fn(|r, c| self.matrix[r][c]);
        let out: SVector<f64, 8> = m * SVector::<f64, 8>::from_row_slice(v);
        std::array::from_fn(|k| out[k])
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..8).all(|r| (0..8).all(|c| (self.matrix[r][c] - self.matrix[c][r]).abs() <= tol))
    }
}

/// Coordinates whose real part vanishes identically: the Hermitian part of
/// their form is zero.
pub fn vanishing_coordinates(gs: &GammaSet, reading: Reading) -> Vec<usize> {
    let h = hermitian_parts(gs, reading);
    (0..5).filter(|&m| h[m].iter().flatten().all(|z| z.norm() == 0.0)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealityEntry {
    pub m: usize,
    /// The bilinear form of `x^m` is Hermitian (exact check).
    pub hermitian: bool,
    pub max_imag: f64,
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealityScan {
    pub convention: String,
    pub reading: Reading,
    pub samples: usize,
    pub seed: u64,
    pub entries: Vec<RealityEntry>,
}

impl RealityScan {
    pub fn real_coordinates(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.real).map(|e| e.m).collect()
    }

    /// Reality is observed exactly where the form is Hermitian.
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.real == e.hermitian)
    }
}

/// Per-coordinate maximum imaginary part over `samples` random spinors.
pub fn reality_scan(gs: &GammaSet, reading: Reading, samples: usize, seed: u64) -> RealityScan {
    let hermitian: [bool; 5] = std::array::from_fn(|m| match reading {
        Reading::Plain => gs.gammas[m].is_hermitian(),
        Reading::Adjoint => (&gs.gammas[0] * &gs.gammas[m]).is_hermitian(),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_imag = [0.0f64; 5];
    for _ in 0..samples {
        let img = spinor_to_x_with(gs, &SpinorPoint::random(&mut rng), reading);
        for m in 0..5 {
            max_imag[m] = max_imag[m].max(img.x[m].im.abs());
        }
    }
    RealityScan {
        convention: gs.convention.id(),
        reading,
        samples,
        seed,
        entries: (0..5)
            .map(|m| RealityEntry { m, hermitian: hermitian[m], max_imag: max_imag[m], real: max_imag[m] < REALITY_TOL })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{standard_gamma_set, ConventionSet};

    fn gs() -> GammaSet {
        standard_gamma_set(ConventionSet::standard()).unwrap()
    }

    #[test]
    fn zero_maps_to_zero() {
        let img = spinor_to_x(&gs(), &SpinorPoint::ZERO);
        assert_eq!(img.x_real, [0.0; 5]);
        assert_eq!(map_jacobian(&gs(), &SpinorPoint::ZERO).max_abs(), 0.0);
    }

    #[test]
    fn first_coordinate_is_half_norm_squared() {
        // γ⁰ = diag(1, 1, −1, −1) ⇒ x⁰ = ½(|ξ¹|² + |ξ²|² − |ξ³|² − |ξ⁴|²)
        let p = SpinorPoint { xi_re: [1.0, 0.0, 0.5, 0.0], xi_im: [0.0, 2.0, 0.0, 0.0] };
        let img = spinor_to_x(&gs(), &p);
        assert!((img.x_real[0] - 0.5 * (1.0 + 4.0 - 0.25)).abs() < 1e-15);
    }

    #[test]
    fn plain_reading_real_only_in_time_direction() {
        let scan = reality_scan(&gs(), Reading::Plain, 200, 1);
        assert_eq!(scan.real_coordinates(), vec![0]);
        assert!(scan.consistent());
        let adj = reality_scan(&gs(), Reading::Adjoint, 200, 1);
        assert_eq!(adj.real_coordinates(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn anti_hermitian_forms_have_no_real_part() {
        assert_eq!(vanishing_coordinates(&gs(), Reading::Plain), vec![1, 2, 3, 4]);
        assert!(vanishing_coordinates(&gs(), Reading::Adjoint).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = SpinorPoint::random(&mut rng);
        let eta: [[f64; 5]; 5] = std::array::from_fn(|i| std::array::from_fn(|j| if i != j { 0.0 } else if i == 0 { 1.0 } else { -1.0 }));
        assert_eq!(pullback_metric(&gs(), &p, &eta).rank, 1);
        let adj = pullback_metric_with(&gs(), &p, &eta, Reading::Adjoint);
        assert!(adj.rank <= 5 && adj.rank > 1, "{}", adj.rank);
    }

    #[test]
    fn phase_direction_in_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = SpinorPoint::random(&mut rng);
        let v = map_jacobian(&gs(), &p).apply(&p.phase_direction());
        assert!(v.iter().all(|c| c.abs() < 1e-14));
    }
}
