//! Measures whether the eight-dimensional operator `(∂²)_ξ`, applied twice to
//! a pulled-back five-dimensional wave solution, vanishes.
//!
//! `(∂²)_ξ = Σ_A s_A (∂²/∂ξ_r^A² + ∂²/∂ξ_i^A²)` with `s = (+, +, −, −)`. The
//! first application is evaluated in closed form through the chain rule, the
//! second by central differences of the first.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::GammaSet;

use super::map::{hermitian_parts, map_jacobian_with, spinor_to_x_with, vanishing_coordinates};
use super::{Reading, SpinorError, SpinorPoint};

pub const PROBE_POINTS: usize = 32;
pub const PROBE_STEP: f64 = 1e-3;
/// Residuals below `PROBE_TOL · max(1, scale)` count as vanishing.
pub const PROBE_TOL: f64 = 1e-6;
const PROBE_SEED: u64 = 0x5eed_0021;
const SPINOR_SIGNS: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionId {
    Constant,
    #[serde(rename = "harmonic_xy")]
    HarmonicXY,
    PlaneWave,
}

impl SolutionId {
    pub const ALL: [SolutionId; 3] = [SolutionId::Constant, SolutionId::HarmonicXY, SolutionId::PlaneWave];

    pub fn as_str(self) -> &'static str {
        match self {
            SolutionId::Constant => "constant",
            SolutionId::HarmonicXY => "harmonic_xy",
            SolutionId::PlaneWave => "plane_wave",
        }
    }
}

impl fmt::Display for SolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolutionId {
    type Err = SpinorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolutionId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| SpinorError::UnknownSolution(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeStatus {
    Confirmed,
    Unconfirmed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub solution: SolutionId,
    pub convention: String,
    pub reading: Reading,
    /// Image coordinates whose real part is identically zero; a solution
    /// depending only on these pulls back to a constant.
    pub vanishing_coordinates: Vec<usize>,
    pub points: usize,
    pub step: f64,
    pub tolerance: f64,
    /// `max |□₅Ψ|` at the image points; confirms the input solves the wave equation.
    pub wave_residual: f64,
    pub max_first: f64,
    pub max_second: f64,
    pub mean_second: f64,
    pub rms_second: f64,
    /// Scale used for the relative threshold: `max |Ψ∘x|` plus `max_first`.
    pub scale: f64,
    pub status: ProbeStatus,
}

/// Value, gradient and Hessian of a five-dimensional solution.
struct Jet {
    value: f64,
    grad: [f64; 5],
    hess: [[f64; 5]; 5],
}

struct Solution {
    id: SolutionId,
    /// Pair of opposite-signature axes carrying the plane wave.
    axes: (usize, usize),
    eta: [f64; 5],
}

const WAVE_NUMBER: f64 = 1.0;

impl Solution {
    fn new(id: SolutionId, flat_metric: &[i64; 5]) -> Self {
        let eta = flat_metric.map(|v| v as f64);
        let partner = (1..5).rev().find(|&j| eta[j] * eta[0] < 0.0).unwrap_or(4);
        Self { id, axes: (0, partner), eta }
    }

    fn jet(&self, x: &[f64; 5]) -> Jet {
        let mut jet = Jet { value: 0.0, grad: [0.0; 5], hess: [[0.0; 5]; 5] };
        match self.id {
            SolutionId::Constant => jet.value = 1.0,
            SolutionId::HarmonicXY => {
                jet.value = x[1] * x[2];
                jet.grad[1] = x[2];
                jet.grad[2] = x[1];
                jet.hess[1][2] = 1.0;
                jet.hess[2][1] = 1.0;
            }
            SolutionId::PlaneWave => {
                // cos(k(x^a + x^b)) with η_aa = −η_bb
                let (a, b) = self.axes;
                let ph = WAVE_NUMBER * (x[a] + x[b]);
                let (s, c) = ph.sin_cos();
                jet.value = c;
                for i in [a, b] {
                    jet.grad[i] = -WAVE_NUMBER * s;
                    for j in [a, b] {
                        jet.hess[i][j] = -WAVE_NUMBER * WAVE_NUMBER * c;
                    }
                }
            }
        }
        jet
    }

    fn wave(&self, x: &[f64; 5]) -> f64 {
        let h = self.jet(x).hess;
        (0..5).map(|m| self.eta[m] * h[m][m]).sum()
    }
}

/// First application of `(∂²)_ξ` to `Ψ∘x`, by the chain rule.
fn first_application(gs: &GammaSet, sol: &Solution, p: &SpinorPoint, reading: Reading) -> f64 {
    let x = spinor_to_x_with(gs, p, reading).x_real;
    let jet = sol.jet(&x);
    let jac = map_jacobian_with(gs, p, reading).j;
    let h = hermitian_parts(gs, reading);
    let mut acc = 0.0;
    for a in 0..4 {
        for col in [a, a + 4] {
            let mut quad = 0.0;
            for m in 0..5 {
                for n in 0..5 {
                    quad += jac[m][col] * jet.hess[m][n] * jac[n][col];
                }
            }
            // ∂²x^m/∂ξ_r^A² = ∂²x^m/∂ξ_i^A² = Re H^m_AA
            let lin: f64 = (0..5).map(|m| jet.grad[m] * h[m][a][a].re).sum();
            acc += SPINOR_SIGNS[a] * (quad + lin);
        }
    }
    acc
}

fn second_application(gs: &GammaSet, sol: &Solution, p: &SpinorPoint, reading: Reading, step: f64) -> f64 {
    let v = p.as_real8();
    let centre = first_application(gs, sol, p, reading);
    let mut acc = 0.0;
    for k in 0..8 {
        let shifted = |d: f64| {
            let mut w = v;
            w[k] += d;
            first_application(gs, sol, &SpinorPoint::from_real8(&w), reading)
        };
        let d2 = (shifted(step) - 2.0 * centre + shifted(-step)) / (step * step);
        acc += SPINOR_SIGNS[k % 4] * d2;
    }
    acc
}

pub fn dalembert_factorization_probe(gs: &GammaSet, solution: SolutionId) -> ProbeReport {
    dalembert_factorization_probe_with(gs, solution, Reading::Plain)
}

pub fn dalembert_factorization_probe_with(gs: &GammaSet, solution: SolutionId, reading: Reading) -> ProbeReport {
    let sol = Solution::new(solution, &gs.flat_metric);
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let (mut wave_residual, mut max_first, mut max_value) = (0.0f64, 0.0f64, 0.0f64);
    let mut seconds = Vec::with_capacity(PROBE_POINTS);
    for _ in 0..PROBE_POINTS {
        let p = SpinorPoint::random(&mut rng);
        let x = spinor_to_x_with(gs, &p, reading).x_real;
        wave_residual = wave_residual.max(sol.wave(&x).abs());
        max_value = max_value.max(sol.jet(&x).value.abs());
        max_first = max_first.max(first_application(gs, &sol, &p, reading).abs());
        seconds.push(second_application(gs, &sol, &p, reading, PROBE_STEP));
    }
    let max_second = seconds.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let n = seconds.len() as f64;
    let mean_second = seconds.iter().sum::<f64>() / n;
    let rms_second = (seconds.iter().map(|v| v * v).sum::<f64>() / n).sqrt();
    let scale = max_value + max_first;
    let status =
        if max_second < PROBE_TOL * scale.max(1.0) { ProbeStatus::Confirmed } else { ProbeStatus::Unconfirmed };
    ProbeReport {
        solution,
        convention: gs.convention.id(),
        reading,
        vanishing_coordinates: vanishing_coordinates(gs, reading),
        points: PROBE_POINTS,
        step: PROBE_STEP,
        tolerance: PROBE_TOL,
        wave_residual,
        max_first,
        max_second,
        mean_second,
        rms_second,
        scale,
        status,
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
    fn parses_ids() {
        for id in SolutionId::ALL {
            assert_eq!(id.as_str().parse::<SolutionId>().unwrap(), id);
        }
        assert_eq!("sphere".parse::<SolutionId>(), Err(SpinorError::UnknownSolution("sphere".into())));
    }

    #[test]
    fn constant_is_annihilated() {
        let r = dalembert_factorization_probe(&gs(), SolutionId::Constant);
        assert_eq!(r.max_first, 0.0);
        assert_eq!(r.max_second, 0.0);
        assert_eq!(r.status, ProbeStatus::Confirmed);
    }

    #[test]
    fn inputs_solve_wave_equation() {
        for reading in [Reading::Plain, Reading::Adjoint] {
            for id in SolutionId::ALL {
                let r = dalembert_factorization_probe_with(&gs(), id, reading);
                assert!(r.wave_residual < 1e-12, "{id}: {}", r.wave_residual);
                assert!(r.max_second.is_finite());
            }
        }
    }

    #[test]
    fn first_application_matches_finite_differences() {
        let g = gs();
        let sol = Solution::new(SolutionId::PlaneWave, &g.flat_metric);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = SpinorPoint::random(&mut rng);
        let v = p.as_real8();
        let reading = Reading::Adjoint;
        let f = |w: &[f64; 8]| sol.jet(&spinor_to_x_with(&g, &SpinorPoint::from_real8(w), reading).x_real).value;
        let h = 1e-4;
        let mut fd = 0.0;
        for k in 0..8 {
            let (mut up, mut dn) = (v, v);
            up[k] += h;
            dn[k] -= h;
            fd += SPINOR_SIGNS[k % 4] * (f(&up) - 2.0 * f(&v) + f(&dn)) / (h * h);
        }
        let exact = first_application(&g, &sol, &p, reading);
        assert!((fd - exact).abs() < 1e-6 * exact.abs().max(1.0), "{fd} vs {exact}");
    }
}
